"""Nearly Siegel modular forms at the q-expansion level.

A coefficient lives in the ``m``-fold tensor power of the rank-``2g`` space
with basis ``omega_1..omega_g, eta_1..eta_g`` (index values ``1..g`` and
``g+1..2g``), twisted by ``det(E)^h`` trivialized by
``omega_1 ^ ... ^ omega_g``.

The Gauss-Manin rule used here is ``nabla(omega_i) = sum_j (dq_ij/q_ij) eta_j``
and ``nabla(eta_i) = 0``; ``dq_ab/q_ab`` is identified with the slot
``u_ab``.  Differentiating the twist produces a wedge with one ``omega_i``
replaced by ``eta_j``; such terms carry the marker ``wedge = (i, j)``.

Realizations:

* :func:`phi_realize` (Hodge): ``eta_i -> sum_k r_ik omega_k``;
* :func:`unit_root_realize`: ``eta_i -> 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

import sympy

from .errors import InterchangeError, UnsupportedRing
from .nearcalc import SymForm, SymRing, q_factor
from .polyring import SparsePolynomial, variable_pairs
from .qseries import QExpansion, r_to_zero
from .rings import QQ, CoeffVector, PolynomialRing, Ring, VectorRing, as_fraction, decode_fraction, is_scalar

Key = tuple[tuple[int, ...], tuple[int, ...]]


class DeRhamCoefficient:
    """Rational combination of tensor words over the omega/eta basis.

    ``terms`` maps ``indices`` (a length-``m`` tuple of values in
    ``1..2g``) to rationals.  Internally keys are ``(indices, wedge)`` with
    ``wedge == ()`` for ordinary terms.
    """

    __slots__ = ("genus", "degree", "twist", "terms")

    def __init__(self, genus: int, degree: int, twist: int = 0, terms: Mapping | None = None):
        self.genus = genus
        self.degree = degree
        self.twist = twist
        clean: dict[Key, Fraction] = {}
        for key, c in (terms or {}).items():
            key = self._key(key)
            c = as_fraction(c)
            clean[key] = clean.get(key, Fraction(0)) + c
        self.terms = {k: c for k, c in sorted(clean.items()) if c}

    def _key(self, key) -> Key:
        if len(key) == 2 and isinstance(key[0], tuple) and isinstance(key[1], tuple):
            idx, wedge = key
        else:
            idx, wedge = tuple(key), ()
        idx = tuple(int(i) for i in idx)
        if len(idx) != self.degree:
            raise ValueError(f"index word {idx} has length {len(idx)}, expected {self.degree}")
        if any(not 1 <= i <= 2 * self.genus for i in idx):
            raise ValueError(f"index word {idx} has entries outside 1..{2 * self.genus}")
        if wedge:
            if len(wedge) != 2 or not all(1 <= w <= self.genus for w in wedge):
                raise ValueError(f"bad wedge marker {wedge}")
            wedge = tuple(int(w) for w in wedge)
        return idx, wedge

    def _same(self, other):
        if (self.genus, self.degree, self.twist) != (other.genus, other.degree, other.twist):
            raise ValueError("de Rham coefficients of different genus, degree or twist")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, DeRhamCoefficient):
            return NotImplemented
        return (self.genus, self.degree, self.twist, self.terms) == \
            (other.genus, other.degree, other.twist, other.terms)

    def __hash__(self):
        return hash((self.genus, self.degree, self.twist, tuple(self.terms.items())))

    def __add__(self, other):
        if not isinstance(other, DeRhamCoefficient):
            return NotImplemented
        self._same(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return DeRhamCoefficient(self.genus, self.degree, self.twist, terms)

    def __neg__(self):
        return DeRhamCoefficient(self.genus, self.degree, self.twist, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, DeRhamCoefficient):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c):
        if not is_scalar(c):
            return NotImplemented
        return DeRhamCoefficient(self.genus, self.degree, self.twist, {k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def has_eta(self) -> bool:
        return any(wedge or any(i > self.genus for i in idx) for idx, wedge in self.terms)

    def __repr__(self):
        g = self.genus
        parts = []
        for (idx, wedge), c in self.terms.items():
            word = "(x)".join(index_name(g, i) for i in idx) or "1"
            if wedge:
                word += f"[w{wedge[0]}->n{wedge[1]}]"
            parts.append(f"{c}*{word}")
        return " + ".join(parts) if parts else "0"


def index_name(genus: int, i: int) -> str:
    return f"w{i}" if i <= genus else f"n{i - genus}"


def parse_index_name(genus: int, name: str) -> int:
    if not isinstance(name, str) or len(name) < 2 or name[0] not in "wn" or not name[1:].isdigit():
        raise InterchangeError(f"bad de Rham index {name!r}")
    k = int(name[1:])
    if not 1 <= k <= genus:
        raise InterchangeError(f"de Rham index {name!r} out of range for genus {genus}")
    return k if name[0] == "w" else k + genus


@dataclass(frozen=True)
class DeRhamRing(Ring):
    genus: int
    degree: int
    twist: int = 0
    kind = "derham"

    def zero(self):
        return DeRhamCoefficient(self.genus, self.degree, self.twist)

    def contains(self, x):
        return isinstance(x, DeRhamCoefficient) and \
            (x.genus, x.degree, x.twist) == (self.genus, self.degree, self.twist)

    def encode(self, x):
        out = []
        for (idx, wedge), c in x.terms.items():
            t = [[index_name(self.genus, i) for i in idx], c.numerator, c.denominator]
            if wedge:
                t.append([f"w{wedge[0]}", f"n{wedge[1]}"])
            out.append(t)
        return out

    def decode(self, obj):
        if not isinstance(obj, list):
            raise InterchangeError("de Rham coefficient must be a list of terms")
        terms = {}
        g = self.genus
        for t in obj:
            if not isinstance(t, list) or len(t) not in (3, 4) or not isinstance(t[0], list):
                raise InterchangeError(f"bad de Rham term {t!r}")
            idx = tuple(parse_index_name(g, n) for n in t[0])
            wedge = ()
            if len(t) == 4:
                w = t[3]
                if not isinstance(w, list) or len(w) != 2 or not (isinstance(w[0], str) and w[0].startswith("w")) \
                        or not (isinstance(w[1], str) and w[1].startswith("n")):
                    raise InterchangeError(f"bad wedge marker {w!r}")
                wedge = (parse_index_name(g, w[0]), parse_index_name(g, w[1]) - g)
            c = decode_fraction([t[1], t[2]])
            if not c:
                raise InterchangeError("stored zero coefficient in de Rham term")
            if (idx, wedge) in terms:
                raise InterchangeError(f"duplicate de Rham word {t[0]!r}")
            terms[(idx, wedge)] = c
        try:
            return DeRhamCoefficient(g, self.degree, self.twist, terms)
        except ValueError as exc:
            raise InterchangeError(str(exc)) from None

    def to_json(self):
        return {"type": "derham", "genus": self.genus, "degree": self.degree, "twist": self.twist}

    def __str__(self):
        return f"deRham(g={self.genus}, m={self.degree}, h={self.twist})"


def omega_words(genus: int, degree: int) -> list[tuple[int, ...]]:
    """The ``g**m`` omega-only words in lexicographic order (the output basis of Phi)."""
    return list(product(range(1, genus + 1), repeat=degree))


def _word_position(genus: int, word: Sequence[int]) -> int:
    pos = 0
    for i in word:
        pos = pos * genus + (i - 1)
    return pos


def phi_coefficient(c: DeRhamCoefficient) -> list[SparsePolynomial]:
    """Hodge realization of one coefficient, on the omega-word basis."""
    g = c.genus
    r = lambda i, j: SparsePolynomial.variable(g, i, j)  # noqa: E731
    one = SparsePolynomial.constant(g)
    out = [SparsePolynomial.zero(g) for _ in range(g ** c.degree)]
    for (idx, wedge), coeff in c.terms.items():
        images = []
        for i in idx:
            if i <= g:
                images.append([(i, one)])
            else:
                images.append([(k, r(i - g, k)) for k in range(1, g + 1)])
        factor = r(*wedge) if wedge else one
        for choice in product(*images):
            word = tuple(k for k, _ in choice)
            p = factor * coeff
            for _, img in choice:
                p = p * img
            pos = _word_position(g, word)
            out[pos] = out[pos] + p
    return out


def phi_realize(F: QExpansion) -> QExpansion:
    """Hodge realization: expansion with r-polynomial vectors on the omega-word basis."""
    ring = _derham_ring(F)
    target = VectorRing(PolynomialRing(ring.genus), ring.genus ** ring.degree)
    return F.map_coefficients(lambda T, c: CoeffVector(phi_coefficient(c)), target)


def unit_root_coefficient(c: DeRhamCoefficient) -> list[Fraction]:
    g = c.genus
    out = [Fraction(0)] * (g ** c.degree)
    for (idx, wedge), coeff in c.terms.items():
        if wedge or any(i > g for i in idx):
            continue
        out[_word_position(g, idx)] += coeff
    return out


def unit_root_realize(F: QExpansion) -> QExpansion:
    """Unit-root realization: annihilate every eta component."""
    ring = _derham_ring(F)
    target = VectorRing(QQ, ring.genus ** ring.degree)
    return F.map_coefficients(lambda T, c: CoeffVector(unit_root_coefficient(c)), target)


evaluate_at_r_zero = r_to_zero


def _derham_ring(F: QExpansion) -> DeRhamRing:
    if not isinstance(F.ring, DeRhamRing):
        raise UnsupportedRing(f"expected de Rham coefficients, got {F.ring}")
    return F.ring


def gauss_manin(F: QExpansion) -> QExpansion:
    """``nabla`` with the Kodaira-Spencer slot identification.

    Returns degree-1 symmetric-form coefficients whose slot ``(a, b)`` holds:
    the q-monomial eigenvalue ``(2 - delta_ab) t_ab / N`` times the input,
    plus every word obtained by replacing one ``omega_a`` by ``eta_b`` or one
    ``omega_b`` by ``eta_a``, plus the twist contribution (wedge markers).
    """
    ring = _derham_ring(F)
    g, m, h = ring.genus, ring.degree, ring.twist
    out = {}
    for T, c in F.items():
        slots = {}
        for a, b in variable_pairs(g):
            acc: dict[Key, Fraction] = {}
            qf = q_factor(T, a, b, F.level)
            for (idx, wedge), coeff in c.terms.items():
                if wedge:
                    raise ValueError("gauss_manin is applied once; input already carries wedge terms")
                if qf:
                    acc[(idx, ())] = acc.get((idx, ()), 0) + coeff * qf
                replacements = [(a, b)] if a == b else [(a, b), (b, a)]
                for pos, i in enumerate(idx):
                    for src, dst in replacements:
                        if i == src:
                            new = idx[:pos] + (g + dst,) + idx[pos + 1:]
                            acc[(new, ())] = acc.get((new, ()), 0) + coeff
                if h:
                    for src, dst in replacements:
                        key = (idx, (src, dst))
                        acc[key] = acc.get(key, 0) + h * coeff
            val = DeRhamCoefficient(g, m, h, acc)
            if val:
                slots[(a, b)] = val
        if slots:
            out[T] = SymForm.linear(g, slots)
    return QExpansion._trusted(g, F.level, F.trace_bound, SymRing(ring, g, 1), out, F.weight)


def phi_symform(F: QExpansion) -> QExpansion:
    """Apply the Hodge realization slotwise to a symmetric-form expansion over de Rham coefficients."""
    if not isinstance(F.ring, SymRing) or not isinstance(F.ring.base, DeRhamRing):
        raise UnsupportedRing("phi_symform needs symmetric forms over de Rham coefficients")
    base = F.ring.base
    target = SymRing(VectorRing(PolynomialRing(base.genus), base.genus ** base.degree), F.ring.genus, F.ring.degree)
    return F.map_coefficients(lambda T, s: s.map(lambda c: CoeffVector(phi_coefficient(c))), target)


def phi_matrix(genus: int, degree: int, twist: int = 0) -> tuple[list, list, list[list[Fraction]]]:
    """Matrix of the Hodge substitution on tensor coordinates.

    Columns are the ``(2g)**m`` basis words; rows are pairs
    ``(omega word, r-monomial)`` occurring in some image.  Returns
    ``(row_labels, column_labels, matrix)``.
    """
    cols = list(product(range(1, 2 * genus + 1), repeat=degree))
    images = []
    rows: dict = {}
    for w in cols:
        vec = phi_coefficient(DeRhamCoefficient(genus, degree, twist, {w: 1}))
        img = {}
        for pos, p in enumerate(vec):
            for e, c in p.items():
                img[(pos, e)] = c
                rows.setdefault((pos, e), None)
        images.append(img)
    row_labels = sorted(rows)
    mat = [[img.get(rl, Fraction(0)) for img in images] for rl in row_labels]
    return row_labels, cols, mat


def phi_rank(genus: int, degree: int) -> int:
    """Exact rank over Q of :func:`phi_matrix`."""
    _, _, mat = phi_matrix(genus, degree)
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in mat]).rank()
