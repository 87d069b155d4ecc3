"""Truncated Fourier expansions ``sum_T a(T) q^{T/N}``.

An expansion stores the coefficients ``a(T)`` for PSD half-integral ``T``
with ``tr(T) <= B``.  Coefficients outside that box are *unknown*, while a
coefficient at a non-PSD index is zero by the support condition.  Because
the trace is additive, a product of two expansions truncated at ``B1`` and
``B2`` is exact up to ``min(B1, B2)``.

The level ``N`` only scales the exponent, so all arithmetic works on the
stored ``T`` directly; expansions of different levels never mix.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterator, Mapping

from .errors import IncompatibleExpansions, TruncationError, UnsupportedRing
from .polyring import SparsePolynomial
from .rings import QQ, CoeffVector, PolynomialRing, RationalRing, Ring, VectorRing, as_fraction
from .tmatrix import HalfIntegralMatrix, add as t_add, is_psd


@dataclass(frozen=True)
class WeightTag:
    """Descriptive weight metadata: a scalar ``h`` or a pair ``(kappa, h)``."""

    h: Fraction | None = None
    kappa: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.h is not None:
            object.__setattr__(self, "h", as_fraction(self.h))
        if self.kappa is not None:
            object.__setattr__(self, "kappa", tuple(int(k) for k in self.kappa))

    @property
    def is_scalar(self):
        return self.kappa is None and self.h is not None

    def shifted(self, dh) -> "WeightTag":
        if self.h is None:
            return self
        return WeightTag(self.h + dh, self.kappa)

    def __repr__(self):
        if self.kappa is None:
            return f"weight {self.h}"
        return f"weight ({self.kappa}, {self.h})"


def _as_weight(w) -> WeightTag | None:
    if w is None or isinstance(w, WeightTag):
        return w
    return WeightTag(h=w)


def _product_weight(w1, w2):
    if w1 is not None and w2 is not None and w1.is_scalar and w2.is_scalar:
        return WeightTag(w1.h + w2.h)
    return None


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("SIEGELQ_THREADS", "1")))
    except ValueError:
        return 1


class QExpansion:
    """Truncated expansion over a pluggable coefficient ring.

    Parameters
    ----------
    genus, level, trace_bound:
        ``g``, ``N`` and the truncation bound ``B`` on ``tr(T)``.
    ring:
        a :class:`~siegelq.rings.Ring` descriptor shared by all coefficients.
    coeffs:
        mapping ``HalfIntegralMatrix -> coefficient``.  Zero coefficients are
        dropped; keys must be PSD with trace at most ``B``.
    weight:
        optional :class:`WeightTag` (or a scalar weight).
    """

    __slots__ = ("genus", "level", "trace_bound", "ring", "weight", "_coeffs")

    def __init__(self, genus: int, level: int, trace_bound: int, ring: Ring = QQ,
                 coeffs: Mapping[HalfIntegralMatrix, Any] | None = None, weight=None):
        if genus < 1:
            raise ValueError("genus must be positive")
        if level < 1:
            raise ValueError("level must be positive")
        if trace_bound < 0:
            raise ValueError("trace bound must be nonnegative")
        clean = {}
        for T, c in (coeffs or {}).items():
            if not isinstance(T, HalfIntegralMatrix):
                raise TypeError(f"index {T!r} is not a HalfIntegralMatrix")
            if T.genus != genus:
                raise ValueError(f"index {T!r} has genus {T.genus}, expected {genus}")
            if T.trace > trace_bound:
                raise ValueError(f"index {T!r} has trace {T.trace} > bound {trace_bound}")
            if not is_psd(T):
                raise ValueError(f"index {T!r} is not positive semi-definite")
            c = ring.coerce(c)
            if c:
                clean[T] = c
        self._init(genus, level, trace_bound, ring, clean, _as_weight(weight))

    def _init(self, genus, level, trace_bound, ring, coeffs, weight):
        self.genus = genus
        self.level = level
        self.trace_bound = trace_bound
        self.ring = ring
        self.weight = weight
        self._coeffs = dict(sorted(coeffs.items()))

    @classmethod
    def _trusted(cls, genus, level, trace_bound, ring, coeffs, weight=None) -> "QExpansion":
        f = object.__new__(cls)
        f._init(genus, level, trace_bound, ring, {T: c for T, c in coeffs.items() if c}, weight)
        return f

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, genus, level=1, trace_bound=0, ring=QQ, weight=None):
        return cls._trusted(genus, level, trace_bound, ring, {}, _as_weight(weight))

    @classmethod
    def one(cls, genus, level=1, trace_bound=0, ring=QQ):
        return cls(genus, level, trace_bound, ring, {HalfIntegralMatrix.zero(genus): 1}, WeightTag(0))

    @classmethod
    def from_genus1(cls, coefficients, ring=QQ, level=1, weight=None, trace_bound=None):
        """Genus-1 expansion from the list ``[a(0), a(1), ...]``."""
        B = len(coefficients) - 1 if trace_bound is None else trace_bound
        return cls(1, level, B, ring,
                   {HalfIntegralMatrix.scalar(n): c for n, c in enumerate(coefficients) if n <= B}, weight)

    # -- access -----------------------------------------------------------

    @property
    def coeffs(self) -> Mapping[HalfIntegralMatrix, Any]:
        return self._coeffs

    def items(self) -> Iterator[tuple[HalfIntegralMatrix, Any]]:
        """Stored terms in canonical index order."""
        return iter(self._coeffs.items())

    def __len__(self):
        return len(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def is_zero(self):
        return not self._coeffs

    def coefficient_at(self, T: HalfIntegralMatrix):
        return coefficient_at(self, T)

    __getitem__ = coefficient_at

    def genus1_list(self) -> list:
        """``[a(0), ..., a(B)]`` for a genus-1 expansion."""
        if self.genus != 1:
            raise ValueError("genus1_list needs a genus-1 expansion")
        return [self.coefficient_at(HalfIntegralMatrix.scalar(n)) for n in range(self.trace_bound + 1)]

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, QExpansion):
            return qexp_add(self, other)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, QExpansion):
            return qexp_add(self, other, 1, -1)
        return NotImplemented

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, QExpansion):
            return qexp_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(1 / as_fraction(c))

    def scale(self, c) -> "QExpansion":
        return QExpansion._trusted(self.genus, self.level, self.trace_bound, self.ring,
                                   {T: a * c for T, a in self._coeffs.items()}, self.weight)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = QExpansion.one(self.genus, self.level, self.trace_bound, self.ring)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        return (self.genus, self.level, self.trace_bound, self.ring) == \
            (other.genus, other.level, other.trace_bound, other.ring) and self._coeffs == other._coeffs

    __hash__ = None

    def identical(self, other: "QExpansion") -> bool:
        """Equality including the weight metadata."""
        return self == other and self.weight == other.weight

    # -- structural helpers -----------------------------------------------

    def truncate(self, bound: int) -> "QExpansion":
        bound = min(bound, self.trace_bound)
        return QExpansion._trusted(self.genus, self.level, bound, self.ring,
                                   {T: c for T, c in self._coeffs.items() if T.trace <= bound}, self.weight)

    def map_coefficients(self, fn: Callable, ring: Ring, weight="keep") -> "QExpansion":
        """Apply ``fn(T, a)`` to every stored coefficient, landing in ``ring``."""
        w = self.weight if weight == "keep" else _as_weight(weight)
        return QExpansion._trusted(self.genus, self.level, self.trace_bound, ring,
                                   {T: fn(T, c) for T, c in self._coeffs.items()}, w)

    def with_weight(self, weight) -> "QExpansion":
        return QExpansion._trusted(self.genus, self.level, self.trace_bound, self.ring,
                                   self._coeffs, _as_weight(weight))

    def change_ring(self, ring: Ring) -> "QExpansion":
        return QExpansion._trusted(self.genus, self.level, self.trace_bound, ring,
                                   {T: ring.coerce(c) for T, c in self._coeffs.items()}, self.weight)

    def __repr__(self):
        head = f"QExpansion(g={self.genus}, N={self.level}, B={self.trace_bound}, ring={self.ring}"
        if self.weight is not None:
            head += f", {self.weight}"
        shown = list(self._coeffs.items())[:6]
        body = ", ".join(f"{T!r}: {c!r}" for T, c in shown)
        if len(self._coeffs) > 6:
            body += ", ..."
        return head + ") {" + body + "}"


def _check_compatible(f: QExpansion, g: QExpansion, what: str):
    if f.genus != g.genus:
        raise IncompatibleExpansions(f"{what}: genus {f.genus} vs {g.genus}")
    if f.level != g.level:
        raise IncompatibleExpansions(
            f"{what}: level {f.level} vs {g.level}; rescale with rescale_level first")


def qexp_add(f: QExpansion, g: QExpansion, c1=1, c2=1) -> QExpansion:
    """``c1*f + c2*g`` truncated to the smaller trace bound."""
    _check_compatible(f, g, "add")
    if f.ring != g.ring:
        raise IncompatibleExpansions(f"add: coefficient rings {f.ring} and {g.ring} differ")
    B = min(f.trace_bound, g.trace_bound)
    c1 = as_fraction(c1)
    c2 = as_fraction(c2)
    out = {}
    for T, a in f.items():
        if T.trace <= B:
            out[T] = a * c1
    for T, b in g.items():
        if T.trace <= B:
            out[T] = out[T] + b * c2 if T in out else b * c2
    weight = f.weight if f.weight == g.weight else None
    return QExpansion._trusted(f.genus, f.level, B, f.ring, out, weight)


def _convolve_chunk(chunk, gterms, bound):
    acc = {}
    for T1, a in chunk:
        room = bound - T1.trace
        for T2, b in gterms:
            if T2.trace > room:
                break
            T = t_add(T1, T2)
            acc[T] = acc[T] + a * b if T in acc else a * b
    return acc


def qexp_mul(f: QExpansion, g: QExpansion, *, threads: int | None = None) -> QExpansion:
    """Product by convolution over ``T1 + T2 = T``.

    With ``threads > 1`` the outer loop is split into chunks processed by a
    thread pool; partial sums are merged in chunk order, so the result does
    not depend on the thread count.
    """
    _check_compatible(f, g, "mul")
    ring = f.ring.product_ring(g.ring)
    if ring is None:
        raise IncompatibleExpansions(f"mul: no product defined for {f.ring} x {g.ring}")
    B = min(f.trace_bound, g.trace_bound)
    fterms = [(T, a) for T, a in f.items() if T.trace <= B]
    gterms = sorted(((T, b) for T, b in g.items() if T.trace <= B), key=lambda tb: (tb[0].trace, tb[0]))
    threads = default_threads() if threads is None else max(1, threads)
    if threads == 1 or len(fterms) < 2 * threads:
        partials = [_convolve_chunk(fterms, gterms, B)]
    else:
        size = -(-len(fterms) // threads)
        chunks = [fterms[i:i + size] for i in range(0, len(fterms), size)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(lambda ch: _convolve_chunk(ch, gterms, B), chunks))
    out = {}
    for part in partials:
        for T, c in part.items():
            out[T] = out[T] + c if T in out else c
    return QExpansion._trusted(f.genus, f.level, B, ring, out, _product_weight(f.weight, g.weight))


def coefficient_at(f: QExpansion, T: HalfIntegralMatrix):
    """Read ``a(T)``.

    A non-PSD index returns the exact zero of the ring (support condition).
    An index with ``tr(T) > B`` raises :class:`TruncationError`: that
    coefficient is unknown, not zero.
    """
    if T.genus != f.genus:
        raise ValueError(f"index of genus {T.genus} for an expansion of genus {f.genus}")
    if not is_psd(T):
        return f.ring.zero()
    if T.trace > f.trace_bound:
        raise TruncationError(f"tr({T!r}) = {T.trace} exceeds the trace bound {f.trace_bound}")
    return f._coeffs.get(T, f.ring.zero())


def rescale_level(f: QExpansion, new_level: int) -> QExpansion:
    """Re-express ``f`` at level ``new_level`` (a multiple of ``f.level``).

    ``q^{T/N}`` becomes ``q^{T'/N'}`` with ``T' = (N'/N) T``; the trace bound
    scales by the same factor.
    """
    if new_level % f.level:
        raise ValueError(f"new level {new_level} is not a multiple of {f.level}")
    k = new_level // f.level
    return QExpansion._trusted(f.genus, new_level, f.trace_bound * k, f.ring,
                               {T.scaled(k): c for T, c in f.items()}, f.weight)


def to_polynomial(f: QExpansion) -> QExpansion:
    """View a rational expansion (or rational vector expansion) as r-polynomial valued."""
    if isinstance(f.ring, PolynomialRing) or (isinstance(f.ring, VectorRing) and isinstance(f.ring.base, PolynomialRing)):
        return f
    P = PolynomialRing(f.genus)
    if isinstance(f.ring, RationalRing):
        return f.change_ring(P)
    if isinstance(f.ring, VectorRing) and isinstance(f.ring.base, RationalRing):
        return f.change_ring(VectorRing(P, f.ring.dim))
    raise UnsupportedRing(f"cannot lift {f.ring} to polynomial coefficients")


def r_to_zero(f: QExpansion) -> QExpansion:
    """Substitute every ``r_ij := 0`` in polynomial (or polynomial-vector) coefficients."""
    if isinstance(f.ring, PolynomialRing):
        return f.map_coefficients(lambda T, c: c.constant_term(), QQ)
    if isinstance(f.ring, VectorRing) and isinstance(f.ring.base, PolynomialRing):
        return f.map_coefficients(lambda T, c: c.map(SparsePolynomial.constant_term),
                                  VectorRing(QQ, f.ring.dim))
    if isinstance(f.ring, RationalRing) or (isinstance(f.ring, VectorRing) and isinstance(f.ring.base, RationalRing)):
        return f
    raise UnsupportedRing(f"r -> 0 is not defined on {f.ring}")


@dataclass(frozen=True)
class GateResult:
    """Outcome of a check; truthy iff it passed.  ``witness`` explains a failure."""

    ok: bool
    witness: Any = None

    def __bool__(self):
        return self.ok


def _rational_parts(c):
    """Yield ``(monomial, rational)`` pairs of a rational / polynomial / vector coefficient."""
    if isinstance(c, Fraction):
        yield None, c
    elif isinstance(c, SparsePolynomial):
        for e, v in c.items():
            yield e, v
    elif isinstance(c, CoeffVector):
        for k, a in enumerate(c):
            for mono, v in _rational_parts(a):
                yield (k, mono), v
    else:
        raise UnsupportedRing(f"integrality is not defined for {type(c).__name__} coefficients")


def integrality_gate(f: QExpansion, p: int) -> GateResult:
    """Check that every rational coefficient of ``f`` has denominator prime to ``p``.

    On failure the witness is ``(T, monomial, coefficient)`` for the first
    offending term in canonical order (``monomial`` is ``None`` for rational
    coefficients, an exponent vector for polynomial ones).
    """
    base = f.ring.base if isinstance(f.ring, VectorRing) else f.ring
    if not isinstance(base, (RationalRing, PolynomialRing)):
        raise UnsupportedRing(f"integrality gate needs rational or polynomial coefficients, not {f.ring}")
    for T, c in f.items():
        for mono, v in _rational_parts(c):
            if v.denominator % p == 0:
                return GateResult(False, (T, mono, v))
    return GateResult(True)
