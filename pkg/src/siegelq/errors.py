"""Exception hierarchy shared by all siegelq modules."""


class SiegelqError(Exception):
    """Base class for domain errors raised by siegelq."""


class GenusMismatch(SiegelqError, ValueError):
    pass


class IncompatibleExpansions(SiegelqError, ValueError):
    """Raised when two expansions disagree on genus, level or coefficient ring."""


class TruncationError(SiegelqError, KeyError):
    """A coefficient was requested beyond the trace bound of an expansion.

    Such a coefficient is unknown, not zero.
    """

    def __str__(self):
        return Exception.__str__(self)


class ResourceLimitError(SiegelqError, RuntimeError):
    pass


class SubstitutionError(SiegelqError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class IntegralityError(SiegelqError, ArithmeticError):
    """A coefficient is not p-integral; ``witness`` records where."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class LadderError(SiegelqError, ZeroDivisionError):
    """An epsilon factor of a Maass-Shimura ladder vanished."""

    def __init__(self, message, index=None, weight=None):
        super().__init__(message)
        self.index = index
        self.weight = weight


class UnsupportedRing(SiegelqError, TypeError):
    pass


class InterchangeError(SiegelqError, ValueError):
    """Malformed or invalid interchange document.

    ``offset`` is a byte offset into the document for parse errors;
    ``term`` is the index of the offending term for invariant violations.
    """

    def __init__(self, message, *, offset=None, line=None, term=None):
        super().__init__(message)
        self.offset = offset
        self.line = line
        self.term = term

    def __str__(self):
        msg = super().__str__()
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.offset is not None:
            where.append(f"byte {self.offset}")
        return f"{msg} ({', '.join(where)})" if where else msg
