"""Sparse multivariate polynomials over Q in the symmetric variables r_ij.

For genus ``g`` the variables are ``r_ij`` with ``1 <= i <= j <= g``, listed
row by row along the upper triangle: ``r11, r12, ..., r1g, r22, ...``.  A
term is keyed by its dense exponent vector of length ``g(g+1)/2``.

Convention: ``r_ij`` is the ``(i, j)`` entry of ``R = -(4 pi)^{-1} Y^{-1}``
where ``Y = Im(Z)``.  With it the genus-1 nearly holomorphic Eisenstein
series of weight 2 reads ``E2 + 12 r11``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterator, Mapping, Union

from .errors import GenusMismatch, SubstitutionError

Exponent = tuple[int, ...]


def nvars(genus: int) -> int:
    return genus * (genus + 1) // 2


@lru_cache(maxsize=None)
def variable_pairs(genus: int) -> tuple[tuple[int, int], ...]:
    """The 1-based index pairs ``(i, j)``, ``i <= j``, in variable order."""
    return tuple((i, j) for i in range(1, genus + 1) for j in range(i, genus + 1))


@lru_cache(maxsize=None)
def _pair_lookup(genus: int) -> dict:
    return {p: k for k, p in enumerate(variable_pairs(genus))}


def var_index(genus: int, i: int, j: int) -> int:
    """Position of ``r_ij`` (symmetric in ``i, j``) in the exponent vector."""
    if i > j:
        i, j = j, i
    try:
        return _pair_lookup(genus)[(i, j)]
    except KeyError:
        raise IndexError(f"r_{i}{j} is not a variable in genus {genus}") from None


def variable_name(genus: int, k: int) -> str:
    i, j = variable_pairs(genus)[k]
    return f"r{i}{j}" if genus < 10 else f"r{i}_{j}"


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)) and not isinstance(c, bool):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"polynomial coefficients must be rational, got {type(c).__name__}")


class SparsePolynomial:
    """Polynomial over Q in the variables ``r_ij`` of a fixed genus.

    Values are immutable: every operation returns a new polynomial.  No zero
    coefficient is ever stored, so ``bool(p)`` is ``False`` exactly for the
    zero polynomial.
    """

    __slots__ = ("genus", "_terms", "_hash")

    def __init__(self, genus: int, terms: Mapping[Exponent, object] | None = None):
        if genus < 1:
            raise ValueError("genus must be positive")
        self.genus = genus
        n = nvars(genus)
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp} for genus {genus}")
            c = _as_fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
        self._terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, genus: int, terms: dict) -> "SparsePolynomial":
        # trusted constructor: exponents valid, coefficients nonzero Fractions
        p = object.__new__(cls)
        p.genus = genus
        p._terms = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, genus: int, c=1) -> "SparsePolynomial":
        return cls(genus, {(0,) * nvars(genus): c})

    @classmethod
    def zero(cls, genus: int) -> "SparsePolynomial":
        return cls._raw(genus, {})

    @classmethod
    def variable(cls, genus: int, i: int, j: int) -> "SparsePolynomial":
        exp = [0] * nvars(genus)
        exp[var_index(genus, i, j)] = 1
        return cls._raw(genus, {tuple(exp): Fraction(1)})

    @classmethod
    def gens(cls, genus: int) -> list["SparsePolynomial"]:
        return [cls.variable(genus, i, j) for i, j in variable_pairs(genus)]

    # -- introspection ----------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return self._terms

    def items(self) -> Iterator[tuple[Exponent, Fraction]]:
        """Terms in canonical (sorted exponent) order."""
        return iter(sorted(self._terms.items()))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_constant(self) -> bool:
        z = (0,) * nvars(self.genus)
        return all(e == z for e in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * nvars(self.genus), Fraction(0))

    def coefficient(self, exp: Exponent) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def occurring_variables(self) -> set[int]:
        return {k for e in self._terms for k, x in enumerate(e) if x}

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "SparsePolynomial | None":
        if isinstance(other, SparsePolynomial):
            if other.genus != self.genus:
                raise GenusMismatch(f"polynomials of genus {self.genus} and {other.genus}")
            return other
        try:
            return SparsePolynomial.constant(self.genus, _as_fraction(other))
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self._terms)
        for e, c in o._terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return SparsePolynomial._raw(self.genus, terms)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial._raw(self.genus, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if not isinstance(other, SparsePolynomial):
            try:
                c = _as_fraction(other)
            except TypeError:
                return NotImplemented
            if not c:
                return SparsePolynomial.zero(self.genus)
            return SparsePolynomial._raw(self.genus, {e: v * c for e, v in self._terms.items()})
        return poly_mul(self, other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        c = _as_fraction(other)
        return self * (1 / c)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = SparsePolynomial.constant(self.genus)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, SparsePolynomial):
            return self.genus == other.genus and self._terms == other._terms
        try:
            c = _as_fraction(other)
        except TypeError:
            return NotImplemented
        return self == SparsePolynomial.constant(self.genus, c)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.genus, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitution ---------------------------------------

    def derive(self, var) -> "SparsePolynomial":
        return poly_derive(self, var)

    def substitute(self, assignment) -> "SparsePolynomial":
        return poly_substitute(self, assignment)

    def at_zero(self) -> Fraction:
        """Value at ``r = 0`` (the constant term)."""
        return self.constant_term()

    def evaluate(self, values):
        """Evaluate at ``values`` (keyed by variable index or ``(i, j)``); values may be any ring elements."""
        values = {_resolve_var(self.genus, k): v for k, v in values.items()}
        total = 0
        for e, c in self._terms.items():
            t = c
            for k, x in enumerate(e):
                if x:
                    t = t * values[k] ** x
            total = total + t
        return total

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), key=lambda ec: (sum(ec[0]), ec[0])):
            mono = "*".join(
                variable_name(self.genus, k) + (f"^{x}" if x > 1 else "")
                for k, x in enumerate(e) if x)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


Assignable = Union[SparsePolynomial, int, Fraction]


def poly_mul(p: SparsePolynomial, q: SparsePolynomial) -> SparsePolynomial:
    if p.genus != q.genus:
        raise GenusMismatch(f"polynomials of genus {p.genus} and {q.genus}")
    terms: dict[Exponent, Fraction] = {}
    for e1, c1 in p._terms.items():
        for e2, c2 in q._terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            terms[e] = terms.get(e, 0) + c1 * c2
    return SparsePolynomial._raw(p.genus, {e: c for e, c in terms.items() if c})


def _resolve_var(genus: int, var) -> int:
    if isinstance(var, tuple):
        return var_index(genus, *var)
    if not 0 <= var < nvars(genus):
        raise IndexError(f"variable index {var} out of range for genus {genus}")
    return var


def poly_derive(p: SparsePolynomial, var) -> SparsePolynomial:
    """Formal partial derivative; ``var`` is an index or a pair ``(i, j)``."""
    k = _resolve_var(p.genus, var)
    terms = {}
    for e, c in p._terms.items():
        if e[k]:
            e2 = e[:k] + (e[k] - 1,) + e[k + 1:]
            terms[e2] = c * e[k]
    return SparsePolynomial._raw(p.genus, terms)


def poly_substitute(p: SparsePolynomial, assignment: Mapping) -> SparsePolynomial:
    """Simultaneous substitution ``r_k -> assignment[r_k]``.

    Keys are variable indices or pairs ``(i, j)``; values are polynomials of
    the same genus or rationals.  Every variable occurring in ``p`` must be
    assigned.
    """
    g = p.genus
    images: dict[int, SparsePolynomial] = {}
    for key, val in assignment.items():
        k = _resolve_var(g, key)
        if not isinstance(val, SparsePolynomial):
            val = SparsePolynomial.constant(g, val)
        elif val.genus != g:
            raise GenusMismatch("substituted polynomial has a different genus")
        images[k] = val
    missing = p.occurring_variables() - images.keys()
    if missing:
        names = ", ".join(variable_name(g, k) for k in sorted(missing))
        raise SubstitutionError(f"no assignment for occurring variable(s) {names}")
    powers: dict[tuple[int, int], SparsePolynomial] = {}

    def power(k, n):
        if (k, n) not in powers:
            powers[(k, n)] = images[k] ** n
        return powers[(k, n)]

    result = SparsePolynomial.zero(g)
    one = SparsePolynomial.constant(g)
    for e, c in p._terms.items():
        t = one
        for k, x in enumerate(e):
            if x:
                t = t * power(k, x)
        result = result + t * c
    return result


def derivation(p: SparsePolynomial, images: Mapping[int, SparsePolynomial]) -> SparsePolynomial:
    """Apply the derivation sending variable ``k`` to ``images[k]`` (others to 0)."""
    result = SparsePolynomial.zero(p.genus)
    for k, img in images.items():
        if img:
            d = poly_derive(p, k)
            if d:
                result = result + d * img
    return result
