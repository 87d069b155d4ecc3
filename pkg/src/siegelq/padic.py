"""p-adic expansions at finite precision: reduction, ``D_p^e``, theta, congruences.

Only the finite-precision consequences of the p-adic theory are modelled:
a p-adic form is known through its coefficients modulo ``p^m``, and two
forms are congruent at precision ``m`` iff their reductions agree.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import IncompatibleExpansions, IntegralityError, UnsupportedRing
from .nearcalc import SymRing, trace_form
from .qseries import GateResult, QExpansion, integrality_gate, r_to_zero
from .rings import PolynomialRing, RationalRing, Residue, ResidueRing, VectorRing
from .tmatrix import det_rational


def reduce_mod(f: QExpansion, p: int, m: int = 1) -> QExpansion:
    """Reduce a rational expansion coefficientwise modulo ``p**m``.

    Raises :class:`IntegralityError` (with the gate's witness) if some
    coefficient is not p-integral, and ``ValueError`` if ``p`` divides the
    level.
    """
    if f.level % p == 0:
        raise ValueError(f"p = {p} divides the level {f.level}")
    ring = ResidueRing(p, m)
    gate = integrality_gate(f, p)
    if not gate:
        T, _mono, c = gate.witness
        raise IntegralityError(f"coefficient {c} at {T!r} is not {p}-integral", witness=gate.witness)
    if isinstance(f.ring, RationalRing):
        return f.map_coefficients(lambda T, c: Residue.from_rational(c, p, m), ring)
    if isinstance(f.ring, VectorRing) and isinstance(f.ring.base, RationalRing):
        return f.map_coefficients(lambda T, c: c.map(lambda a: Residue.from_rational(a, p, m)),
                                  VectorRing(ring, f.ring.dim))
    raise UnsupportedRing(f"reduce_mod needs rational coefficients, not {f.ring}")


def _scalar_multiplier(ring, x: Fraction):
    # residues need p-integral multipliers
    if isinstance(ring, ResidueRing):
        if x.denominator % ring.p == 0:
            raise ValueError(f"multiplier {x} is not {ring.p}-integral")
        return Residue.from_rational(x, ring.p, ring.m)
    return x


def _base_ring(ring):
    return ring.base if isinstance(ring, VectorRing) else ring


def dp_operator(f: QExpansion, e: int = 1) -> QExpansion:
    """``D_p^e``: ``a(T) -> a(T) * (tr(T u) / N)**e`` with values in ``S_e(Sym^2)``."""
    if e < 1:
        raise ValueError("e must be a positive integer")
    base = _base_ring(f.ring)
    if not isinstance(base, (RationalRing, ResidueRing, PolynomialRing)):
        raise UnsupportedRing(f"dp_operator is not defined over {f.ring}")
    out = {}
    for T, a in f.items():
        form = trace_form(T, f.level) ** e
        out[T] = form.map(lambda c: a * _scalar_multiplier(base, c))
    return QExpansion._trusted(f.genus, f.level, f.trace_bound, SymRing(f.ring, f.genus, e), out, f.weight)


def theta_op(f: QExpansion) -> QExpansion:
    """Theta operator ``a(T) -> a(T) * det(T / N)``.

    Over ``Z/p^m`` the multiplier must be p-integral.  For ``p = 2`` this
    fails as soon as some ``det(T)`` has an even denominator, and the
    operator is refused rather than guessed.
    """
    base = _base_ring(f.ring)
    N = f.level
    g = f.genus

    def mult(T, a):
        d = det_rational(T) / N ** g
        if isinstance(base, ResidueRing) and d.denominator % base.p == 0:
            raise ValueError(f"det(T/N) = {d} at {T!r} is not {base.p}-integral; theta is undefined mod {base.p}^{base.m}")
        return a * _scalar_multiplier(base, d)

    weight = f.weight.shifted(2) if f.weight is not None else None
    return f.map_coefficients(mult, f.ring, weight=weight)


def weight_congruent(k1: int, k2: int, p: int, m: int = 1) -> bool:
    """Scalar weights congruent modulo ``(p - 1) p^{m-1}``."""
    return (k1 - k2) % ((p - 1) * p ** (m - 1)) == 0


def congruence_check(f: QExpansion, g: QExpansion, p: int, m: int = 1) -> GateResult:
    """Compare the reductions of ``f`` and ``g`` modulo ``p**m``.

    Weights are not compared (see :func:`weight_congruent`).  On failure the
    witness is ``(T, f(T) mod p^m, g(T) mod p^m)`` for the first differing
    index in canonical order.
    """
    if (f.genus, f.level, f.trace_bound) != (g.genus, g.level, g.trace_bound):
        raise IncompatibleExpansions("congruence_check needs equal genus, level and trace bound")
    rf = reduce_mod(f, p, m)
    rg = reduce_mod(g, p, m)
    for T in sorted(set(rf.coeffs) | set(rg.coeffs)):
        a = rf.coeffs.get(T, rf.ring.zero())
        b = rg.coeffs.get(T, rg.ring.zero())
        if a != b:
            return GateResult(False, (T, a, b))
    return GateResult(True)


def padic_realize(f: QExpansion) -> QExpansion:
    """The p-adic avatar of a nearly holomorphic expansion: ``r_ij := 0``."""
    return r_to_zero(f)


__all__ = ["reduce_mod", "dp_operator", "theta_op", "weight_congruent", "congruence_check", "padic_realize"]
