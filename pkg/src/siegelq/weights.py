"""Dominant weights and the Weyl dimension formulas for GL_g and Sp_2g."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


def is_dominant(kappa: Sequence[int]) -> bool:
    """True iff ``kappa`` is weakly decreasing and nonnegative."""
    if len(kappa) < 1:
        raise ValueError("a weight needs at least one entry")
    return all(a >= b for a, b in zip(kappa, kappa[1:])) and kappa[-1] >= 0


@dataclass(frozen=True)
class DominantWeight:
    """A dominant weight ``kappa`` together with a determinant twist ``h``.

    Twisting ``W_kappa`` by ``det**h`` corresponds to the weight
    ``kappa - h(1, ..., 1)``; dimensions do not see the twist.
    """

    kappa: tuple[int, ...]
    det_twist: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kappa", tuple(int(k) for k in self.kappa))
        if not is_dominant(self.kappa):
            raise ValueError(f"{self.kappa} is not dominant (need k1 >= ... >= kg >= 0)")

    @property
    def genus(self) -> int:
        return len(self.kappa)

    def shifted(self, h: int) -> tuple[int, ...]:
        """``kappa - h(1, ..., 1)`` (not necessarily dominant)."""
        return tuple(k - h for k in self.kappa)


def _kappa(kappa, g):
    k = kappa.kappa if isinstance(kappa, DominantWeight) else tuple(kappa)
    if g is None:
        g = len(k)
    if len(k) != g:
        raise ValueError(f"weight {k} has length {len(k)}, expected {g}")
    if not is_dominant(k):
        raise ValueError(f"{k} is not dominant")
    return k, g


def _exact_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"Weyl product {x} is not an integer")
    return x.numerator


def dim_gl(kappa, g: int | None = None) -> int:
    """Dimension of the irreducible GL_g representation of highest weight ``kappa``."""
    k, g = _kappa(kappa, g)
    d = Fraction(1)
    for i in range(g):
        for j in range(i + 1, g):
            d *= Fraction(k[i] - k[j] + j - i, j - i)
    return _exact_int(d)


def dim_sp(kappa, g: int | None = None) -> int:
    """Dimension of the irreducible Sp_2g representation of highest weight ``kappa``.

    Type C_g: positive roots ``e_i - e_j``, ``e_i + e_j`` (i < j) and ``2 e_i``,
    with ``rho = (g, g-1, ..., 1)``.
    """
    k, g = _kappa(kappa, g)
    rho = [g - i for i in range(g)]
    lam = [k[i] + rho[i] for i in range(g)]
    d = Fraction(1)
    for i in range(g):
        for j in range(i + 1, g):
            d *= Fraction(lam[i] - lam[j], rho[i] - rho[j])
            d *= Fraction(lam[i] + lam[j], rho[i] + rho[j])
        d *= Fraction(lam[i], rho[i])
    return _exact_int(d)
