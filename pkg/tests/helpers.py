"""Random generators shared by the property and acceptance tests."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from siegelq import (QQ, DeRhamCoefficient, DeRhamRing, HalfIntegralMatrix, PolynomialRing, QExpansion,
                     SparsePolynomial, enumerate_psd)
from siegelq.nearcalc import SymForm, SymRing
from siegelq.polyring import nvars
from siegelq.rings import CoeffVector, Residue, ResidueRing, VectorRing


def rand_fraction(rng: random.Random, lo=-20, hi=20, dens=(1, 2, 3, 4, 6, 7)) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def rand_poly(rng: random.Random, genus: int, max_degree: int = 2, terms: int = 3) -> SparsePolynomial:
    n = nvars(genus)
    out = {}
    for _ in range(rng.randint(0, terms)):
        e = [0] * n
        for _ in range(rng.randint(0, max_degree)):
            e[rng.randrange(n)] += 1
        out[tuple(e)] = rand_fraction(rng)
    return SparsePolynomial(genus, out)


def rand_support(rng: random.Random, genus: int, bound: int, k: int | None = None) -> list[HalfIntegralMatrix]:
    pool = enumerate_psd(genus, bound)
    k = rng.randint(0, min(len(pool), 8)) if k is None else min(k, len(pool))
    return rng.sample(pool, k)


def rand_expansion(rng: random.Random, genus: int, bound: int, kind: str = "QQ", *, level: int = 1,
                   max_degree: int = 2, k: int | None = None, weight=None) -> QExpansion:
    """Random expansion whose coefficients live in the ring named by ``kind``."""
    if kind == "QQ":
        ring, gen = QQ, lambda: rand_fraction(rng)
    elif kind == "poly":
        ring, gen = PolynomialRing(genus), lambda: rand_poly(rng, genus, max_degree)
    elif kind == "vec":
        ring = VectorRing(PolynomialRing(genus), 2)
        gen = lambda: CoeffVector([rand_poly(rng, genus, max_degree) for _ in range(2)])  # noqa: E731
    elif kind == "Zmod":
        ring = ResidueRing(5, 2)
        gen = lambda: Residue(rng.randrange(25), 5, 2)  # noqa: E731
    elif kind == "sym":
        ring = SymRing(QQ, genus, 2)
        gen = lambda: rand_symform(rng, genus, 2)  # noqa: E731
    elif kind == "derham":
        m = rng.randint(0, 2)
        ring = DeRhamRing(genus, m, 0)
        gen = lambda: rand_derham(rng, genus, m)  # noqa: E731
    else:
        raise ValueError(kind)
    coeffs = {T: gen() for T in rand_support(rng, genus, bound, k)}
    return QExpansion(genus, level, bound, ring, coeffs, weight)


def rand_symform(rng: random.Random, genus: int, degree: int) -> SymForm:
    n = nvars(genus)
    terms = {}
    for _ in range(rng.randint(0, 3)):
        e = [0] * n
        for _ in range(degree):
            e[rng.randrange(n)] += 1
        terms[tuple(e)] = rand_fraction(rng)
    return SymForm(genus, degree, terms)


def rand_derham(rng: random.Random, genus: int, degree: int, twist: int = 0) -> DeRhamCoefficient:
    words = list(product(range(1, 2 * genus + 1), repeat=degree))
    terms = {}
    for w in rng.sample(words, rng.randint(0, min(len(words), 5))):
        terms[w] = rand_fraction(rng)
    return DeRhamCoefficient(genus, degree, twist, terms)


def rand_derham_expansion(rng: random.Random, genus: int, degree: int, bound: int = 2, twist: int = 0) -> QExpansion:
    ring = DeRhamRing(genus, degree, twist)
    coeffs = {T: rand_derham(rng, genus, degree, twist) for T in rand_support(rng, genus, bound)}
    return QExpansion(genus, 1, bound, ring, coeffs)
