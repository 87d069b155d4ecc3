"""Genus-1 Eisenstein series, Bernoulli numbers and coefficient-table ingestion.

Generated series are normalized to constant term 1.  Higher-genus
Eisenstein coefficients are not computed here; they enter through
:func:`load_coefficient_table`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .interchange import read_table
from .nearcalc import delta_ladder
from .polyring import SparsePolynomial
from .qseries import QExpansion, WeightTag
from .rings import PolynomialRing


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Exact ``B_n`` with ``B_1 = -1/2``, from ``sum_{k<=n} C(n+1, k) B_k = 0``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2:
        return Fraction(0)
    acc = sum((comb(n + 1, k) * bernoulli(k) for k in range(n)), Fraction(0))
    return -acc / (n + 1)


def divisor_sigma_table(k: int, n_max: int) -> list[int]:
    """``[sigma_k(0) := 0, sigma_k(1), ..., sigma_k(n_max)]`` by a sieve."""
    sigma = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        dk = d ** k
        for m in range(d, n_max + 1, d):
            sigma[m] += dk
    return sigma


def _check_weight(h: int):
    if not isinstance(h, int) or isinstance(h, bool) or h < 4 or h % 2:
        raise ValueError(f"weight must be even >= 4, got {h!r}")


def eisenstein_coefficients(h: int, prec: int) -> list[Fraction]:
    """``[1, -2h/B_h sigma_{h-1}(1), ...]`` up to ``q**prec``."""
    c = Fraction(-2 * h) / bernoulli(h)
    sigma = divisor_sigma_table(h - 1, prec)
    return [Fraction(1)] + [c * sigma[n] for n in range(1, prec + 1)]


def eisenstein_q(h: int, prec: int) -> QExpansion:
    """Normalized holomorphic ``E_h`` (genus 1, level 1), exact through ``q**prec``."""
    _check_weight(h)
    if prec < 0:
        raise ValueError("precision must be nonnegative")
    return QExpansion.from_genus1(eisenstein_coefficients(h, prec), weight=WeightTag(h))


def eisenstein_e2(prec: int) -> QExpansion:
    """The quasi-modular ``E_2 = 1 - 24 sum sigma_1(n) q^n``."""
    sigma = divisor_sigma_table(1, prec)
    return QExpansion.from_genus1([1] + [-24 * sigma[n] for n in range(1, prec + 1)])


def e2_star(prec: int) -> QExpansion:
    """``E_2^* = E_2 + 12 r_11``, nearly holomorphic of weight 2."""
    e2 = eisenstein_e2(prec)
    r = SparsePolynomial.variable(1, 1, 1)
    ring = PolynomialRing(1)
    coeffs = {T: ring.coerce(c) for T, c in e2.items()}
    zero = next(iter(coeffs))
    coeffs[zero] = coeffs[zero] + 12 * r
    return QExpansion(1, 1, prec, ring, coeffs, weight=WeightTag(2))


def nearly_eisenstein(h: int, s: int, prec: int) -> QExpansion:
    """The nearly holomorphic series of weight ``h`` reached from ``E_{h+2s}`` by ``-s`` Maass steps."""
    if s > 0:
        raise ValueError("s must be a nonpositive integer")
    start = h + 2 * s
    if start <= 2:
        raise ValueError(f"h + 2s = {start} must exceed g + 1 = 2")
    return delta_ladder(eisenstein_q(start, prec), h, s)


def load_coefficient_table(path, *, strict: bool = True) -> QExpansion:
    """Read and validate a coefficient table in the JSON interchange format.

    Use :func:`siegelq.interchange.read_table` to also get the
    ``{source, normalization, citation}`` header.
    """
    return read_table(path, strict=strict).expansion


__all__ = [
    "bernoulli", "divisor_sigma_table", "eisenstein_coefficients", "eisenstein_q", "eisenstein_e2",
    "e2_star", "nearly_eisenstein", "load_coefficient_table"
]
