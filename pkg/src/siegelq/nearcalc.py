"""Differential operators on nearly holomorphic expansions.

All operators act on expansions whose coefficients are polynomials in the
``r_ij`` (see :mod:`siegelq.polyring`).  They are written in conjugated
form, so neither ``det(Z - Zbar)^h`` nor ``R^{-1}`` ever has to be
represented.  With ``d_ab`` the normalized derivative ``d / d(2 pi i z_ab)``:

* ``d_ab q^{T/N} = (2 - delta_ab) t_ab / N * q^{T/N}``
* ``d_ab r_kl = -(R E_ab R)_kl`` with ``E_ab = e_a e_b^t + e_b e_a^t``
  (``e_a e_a^t`` on the diagonal)
* ``d_ab log det(Z - Zbar) = (2 - delta_ab) r_ab``.

Symmetric-form valued coefficients (values in ``S_e(Sym^2)``) are
homogeneous polynomials of degree ``e`` in slot variables ``u_ij``,
``i <= j``, where ``u`` stands for the symmetric matrix with entries
``u_ij``; see :class:`SymForm`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Any, Mapping, Sequence

from .errors import InterchangeError, LadderError, UnsupportedRing
from .polyring import SparsePolynomial, derivation, nvars, var_index, variable_pairs
from .qseries import QExpansion, WeightTag, to_polynomial
from .rings import QQ, PolynomialRing, Ring, as_fraction, is_scalar
from .tmatrix import HalfIntegralMatrix

Exponent = tuple[int, ...]


class SymForm:
    """Homogeneous degree-``e`` polynomial in the slots ``u_ij`` with arbitrary coefficients.

    Coefficients can be any ring values supporting ``+`` and ``*``
    (rationals, r-polynomials, residues, de Rham coefficients).
    """

    __slots__ = ("genus", "degree", "terms")

    def __init__(self, genus: int, degree: int, terms: Mapping[Exponent, Any] | None = None):
        self.genus = genus
        self.degree = degree
        n = nvars(genus)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != n or sum(exp) != degree or min(exp, default=0) < 0:
                raise ValueError(f"slot exponent {exp} is not of degree {degree} in genus {genus}")
            if exp in clean:
                c = clean[exp] + c
            clean[exp] = c
        self.terms = {e: c for e, c in sorted(clean.items()) if c}

    @classmethod
    def linear(cls, genus: int, slots: Mapping[tuple[int, int], Any]) -> "SymForm":
        """Degree-1 form ``sum c_ab u_ab`` from a mapping ``(a, b) -> c_ab``."""
        n = nvars(genus)
        terms = {}
        for (a, b), c in slots.items():
            e = [0] * n
            e[var_index(genus, a, b)] = 1
            terms[tuple(e)] = c
        return cls(genus, 1, terms)

    @classmethod
    def constant(cls, genus: int, c) -> "SymForm":
        return cls(genus, 0, {(0,) * nvars(genus): c})

    def slot(self, a: int, b: int):
        """Coefficient of ``u_ab`` in a degree-1 form (``None`` when absent)."""
        if self.degree != 1:
            raise ValueError("slot() is only defined on degree-1 forms")
        e = [0] * nvars(self.genus)
        e[var_index(self.genus, a, b)] = 1
        return self.terms.get(tuple(e))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SymForm):
            return NotImplemented
        return (self.genus, self.degree) == (other.genus, other.degree) and self.terms == other.terms

    def __hash__(self):
        return hash((self.genus, self.degree, tuple(self.terms.items())))

    def _same(self, other):
        if (self.genus, self.degree) != (other.genus, other.degree):
            raise ValueError("symmetric forms of different genus or degree")

    def __add__(self, other):
        if not isinstance(other, SymForm):
            return NotImplemented
        self._same(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return SymForm(self.genus, self.degree, terms)

    def __neg__(self):
        return SymForm(self.genus, self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SymForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SymForm):
            if other.genus != self.genus:
                raise ValueError("symmetric forms of different genus")
            terms = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(x + y for x, y in zip(e1, e2))
                    p = c1 * c2
                    terms[e] = terms[e] + p if e in terms else p
            return SymForm(self.genus, self.degree + other.degree, terms)
        return SymForm(self.genus, self.degree, {e: c * other for e, c in self.terms.items()})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        result = SymForm.constant(self.genus, Fraction(1))
        for _ in range(n):
            result = result * self
        return result

    def map(self, fn) -> "SymForm":
        return SymForm(self.genus, self.degree, {e: fn(c) for e, c in self.terms.items()})

    def evaluate(self, u: Mapping[tuple[int, int], Any]):
        """Value at the symmetric matrix with entries ``u[(i, j)]``, ``i <= j``."""
        total = 0
        pairs = variable_pairs(self.genus)
        for e, c in self.terms.items():
            t = c
            for k, x in enumerate(e):
                if x:
                    t = t * (u[pairs[k]] ** x)
            total = total + t
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        pairs = variable_pairs(self.genus)
        parts = []
        for e, c in self.terms.items():
            mono = "*".join(f"u{pairs[k][0]}{pairs[k][1]}" + (f"^{x}" if x > 1 else "")
                            for k, x in enumerate(e) if x)
            parts.append(f"({c!r})*{mono}" if mono else f"({c!r})")
        return " + ".join(parts)


@dataclass(frozen=True)
class SymRing(Ring):
    """Ring descriptor for ``S_e(Sym^2)``-valued coefficients over ``base``."""

    base: Ring
    genus: int
    degree: int
    kind = "sym"

    def zero(self):
        return SymForm(self.genus, self.degree)

    def contains(self, x):
        return isinstance(x, SymForm) and (x.genus, x.degree) == (self.genus, self.degree) \
            and all(self.base.contains(c) for c in x.terms.values())

    def coerce(self, x):
        if not isinstance(x, SymForm) or (x.genus, x.degree) != (self.genus, self.degree):
            raise TypeError(f"{x!r} is not an element of {self}")
        return x.map(self.base.coerce)

    def encode(self, x):
        return [[list(e), self.base.encode(c)] for e, c in x.terms.items()]

    def decode(self, obj):
        if not isinstance(obj, list):
            raise InterchangeError("symmetric-form coefficient must be a list of [slot exponents, coefficient]")
        terms = {}
        for t in obj:
            if not isinstance(t, list) or len(t) != 2 or not isinstance(t[0], list):
                raise InterchangeError(f"bad symmetric-form term {t!r}")
            e = tuple(t[0])
            if len(e) != nvars(self.genus) or not all(isinstance(v, int) and v >= 0 for v in e) \
                    or sum(e) != self.degree:
                raise InterchangeError(f"bad slot exponent {t[0]!r}")
            if e in terms:
                raise InterchangeError(f"duplicate slot exponent {t[0]!r}")
            terms[e] = self.base.decode(t[1])
        return SymForm(self.genus, self.degree, terms)

    def to_json(self):
        return {"type": "sym", "genus": self.genus, "degree": self.degree, "base": self.base.to_json()}

    def product_ring(self, other):
        b = self.base.product_ring(other)
        return SymRing(b, self.genus, self.degree) if b is not None else None

    def __str__(self):
        return f"S_{self.degree}(Sym2; g={self.genus}) over {self.base}"


# ---------------------------------------------------------------------------
# the base derivation


def _poly_expansion(f: QExpansion) -> QExpansion:
    if isinstance(f.ring, PolynomialRing):
        return f
    try:
        return to_polynomial(f)
    except UnsupportedRing:
        raise UnsupportedRing(f"differential operators need polynomial coefficients, not {f.ring}") from None


@lru_cache(maxsize=None)
def _r_images(genus: int, a: int, b: int) -> dict[int, SparsePolynomial]:
    """``d_ab r_kl`` for every variable ``r_kl``."""
    r = lambda i, j: SparsePolynomial.variable(genus, i, j)  # noqa: E731
    images = {}
    for k, (i, j) in enumerate(variable_pairs(genus)):
        if a == b:
            img = -(r(i, a) * r(a, j))
        else:
            img = -(r(i, a) * r(b, j) + r(i, b) * r(a, j))
        images[k] = img
    return images


def q_factor(T: HalfIntegralMatrix, a: int, b: int, level: int) -> Fraction:
    """``(2 - delta_ab) t_ab / N``: the eigenvalue of ``d_ab`` on ``q^{T/N}``."""
    if a == b:
        return Fraction(T.doubled_entry(a, a), 2 * level)
    return Fraction(T.doubled_entry(a, b), level)


def partial_z(f: QExpansion, a: int, b: int) -> QExpansion:
    """The normalized derivative ``d / d(2 pi i z_ab)`` of an r-polynomial expansion."""
    f = _poly_expansion(f)
    g = f.genus
    if a > b:
        a, b = b, a
    if not (1 <= a <= b <= g):
        raise IndexError(f"slot ({a}, {b}) out of range for genus {g}")
    images = _r_images(g, a, b)
    out = {}
    for T, c in f.items():
        val = c * q_factor(T, a, b, f.level) + derivation(c, images)
        if val:
            out[T] = val
    return QExpansion._trusted(g, f.level, f.trace_bound, f.ring, out, None)


def _times_r(f: QExpansion, a: int, b: int, c) -> QExpansion:
    if not c:
        return QExpansion._trusted(f.genus, f.level, f.trace_bound, f.ring, {}, None)
    r = SparsePolynomial.variable(f.genus, a, b) * c
    return QExpansion._trusted(f.genus, f.level, f.trace_bound, f.ring,
                               {T: x * r for T, x in f.items()}, None)


def shimura_D(f: QExpansion, h) -> QExpansion:
    """Scalar-weight Shimura operator ``D_{det^h}`` (one application).

    The result has degree-1 symmetric-form coefficients; the ``u_ab``
    component is ``d_ab f + h (2 - delta_ab) r_ab f``.
    """
    f = _poly_expansion(f)
    g = f.genus
    h = as_fraction(h)
    comps = {}
    for a, b in variable_pairs(g):
        comps[(a, b)] = partial_z(f, a, b) + _times_r(f, a, b, h * (1 if a == b else 2))
    out = {}
    keys = sorted(set().union(*(c.coeffs.keys() for c in comps.values())))
    for T in keys:
        slots = {ab: comps[ab].coeffs[T] for ab in comps if T in comps[ab].coeffs}
        out[T] = SymForm.linear(g, slots)
    return QExpansion._trusted(g, f.level, f.trace_bound, SymRing(f.ring, g, 1), out, None)


# ---------------------------------------------------------------------------
# contraction against the trace pairing on Sym^2


def gram_diagonal(genus: int) -> tuple[int, ...]:
    """``tr(E_ab E_ab)`` for the slot basis: 1 on the diagonal, 2 off it.

    The basis ``E_ab`` is orthogonal for ``tr(uv)``, so the dual basis is
    ``E_ab / gram[ab]``.
    """
    return tuple(1 if i == j else 2 for i, j in variable_pairs(genus))


def dual_basis(genus: int) -> list[tuple[list[list[int]], list[list[Fraction]]]]:
    """Pairs ``(E_ab, dual of E_ab)`` as explicit symmetric matrices."""
    out = []
    for (i, j), G in zip(variable_pairs(genus), gram_diagonal(genus)):
        E = [[0] * genus for _ in range(genus)]
        E[i - 1][j - 1] = 1
        E[j - 1][i - 1] = 1
        out.append((E, [[Fraction(x, G) for x in row] for row in E]))
    return out


def _multinomial_weight(e: Exponent, degree: int, gram: Sequence[int]) -> Fraction:
    num = math.prod(math.factorial(x) for x in e)
    den = math.factorial(degree) * math.prod(G ** x for G, x in zip(gram, e))
    return Fraction(num, den)


def contract_tensor(genus: int, degree: int, tensor: Mapping[tuple[Exponent, Exponent], Any]):
    """Contract a doubly ``S_e``-valued coefficient.

    ``tensor`` maps pairs of slot monomials ``(alpha, beta)`` to
    coefficients of ``u^alpha (x) v^beta``; the result is
    ``sum_I h(u_I, v_I)`` over ordered ``e``-tuples of the slot basis and
    its dual, where ``h`` is the polarized (symmetric multilinear) form.
    """
    gram = gram_diagonal(genus)
    total = None
    n = nvars(genus)
    for (alpha, beta), c in tensor.items():
        if len(alpha) != n or len(beta) != n or sum(alpha) != degree or sum(beta) != degree:
            raise ValueError(f"slot arity mismatch: {alpha} / {beta} for degree {degree}")
        if alpha != beta:
            continue
        t = c * _multinomial_weight(alpha, degree, gram)
        total = t if total is None else total + t
    return Fraction(0) if total is None else total


def contract(P: SymForm, Q: SymForm):
    """Contraction of ``P (x) Q`` for two forms of one degree."""
    if (P.genus, P.degree) != (Q.genus, Q.degree):
        raise ValueError(f"slot arity mismatch: degree {P.degree} vs {Q.degree}")
    gram = gram_diagonal(P.genus)
    total = None
    for e, p in P.terms.items():
        q = Q.terms.get(e)
        if q is None:
            continue
        w = _multinomial_weight(e, P.degree, gram)
        t = p * (q * w) if is_scalar(q) else (p * q) * w
        total = t if total is None else total + t
    return Fraction(0) if total is None else total


def det_form(genus: int) -> SymForm:
    """``det(u)`` as a degree-``g`` form in the slots ``u_ij``."""
    n = nvars(genus)
    terms: dict[Exponent, Fraction] = {}
    for perm in permutations(range(genus)):
        inv = sum(1 for i in range(genus) for j in range(i + 1, genus) if perm[i] > perm[j])
        e = [0] * n
        for i, j in enumerate(perm):
            e[var_index(genus, i + 1, j + 1)] += 1
        e = tuple(e)
        terms[e] = terms.get(e, Fraction(0)) + (-1) ** inv
    return SymForm(genus, genus, terms)


def trace_form(T: HalfIntegralMatrix, level: int = 1) -> SymForm:
    """The linear form ``u -> tr(T u) / N``."""
    g = T.genus
    return SymForm.linear(g, {(a, b): q_factor(T, a, b, level) for a, b in variable_pairs(g)})


def contract_expansion(F: QExpansion, Q: SymForm) -> QExpansion:
    """Contract every symmetric-form coefficient of ``F`` against the fixed form ``Q``."""
    if not isinstance(F.ring, SymRing):
        raise UnsupportedRing("contract_expansion needs symmetric-form coefficients")
    if (F.ring.genus, F.ring.degree) != (Q.genus, Q.degree):
        raise ValueError("slot arity mismatch between expansion and form")
    base = F.ring.base
    return F.map_coefficients(lambda T, c: base.coerce(contract(c, Q)), base, weight=None)


# ---------------------------------------------------------------------------
# Maass-Shimura determinant operator


def epsilon(genus: int, h) -> Fraction:
    """``h (h - 1/2) ... (h - (g-1)/2)``."""
    h = as_fraction(h)
    out = Fraction(1)
    for j in range(genus):
        out *= h - Fraction(j, 2)
    return out


def _m_entry(f: QExpansion, i: int, j: int, shift: Fraction) -> QExpansion:
    """``M_ij = ((1 + delta_ij)/2) d_ij + shift * r_ij`` applied to ``f``."""
    d = partial_z(f, i, j)
    if i != j:
        d = d.scale(Fraction(1, 2))
    return d + _times_r(f, i, j, shift)


def maass_delta(f: QExpansion, h, order: Sequence[int] | None = None) -> QExpansion:
    """Apply the Maass-Shimura operator ``delta_h``.

    ``delta_h = det(M)`` with commuting entries
    ``M_ij = ((1 + delta_ij)/2) d_ij + (h - (g-1)/2) r_ij``, expanded by the
    Leibniz formula.  ``order`` lists the rows in the order their factors are
    applied inside each Leibniz term (default: last row first); the entries
    commute, so every order gives the same result.

    At genus 1 this is ``theta_q f + h r f - r^2 df/dr``.
    """
    f = _poly_expansion(f)
    g = f.genus
    h = as_fraction(h)
    shift = h - Fraction(g - 1, 2)
    rows = list(range(g - 1, -1, -1)) if order is None else [int(i) for i in order]
    if sorted(rows) != list(range(g)):
        raise ValueError(f"order must be a permutation of 0..{g - 1}")
    total = QExpansion._trusted(g, f.level, f.trace_bound, f.ring, {}, None)
    for perm in permutations(range(g)):
        inv = sum(1 for i in range(g) for j in range(i + 1, g) if perm[i] > perm[j])
        term = f
        for row in rows:
            term = _m_entry(term, row + 1, perm[row] + 1, shift)
        total = total - term if inv % 2 else total + term
    return total.with_weight(WeightTag(h + 2))


def delta_ladder(f: QExpansion, h: int, s: int) -> QExpansion:
    """``prod_i eps_g(h+2s+2i)^{-1} * (delta_{h-2} o ... o delta_{h+2s})(f)``.

    ``f`` is a holomorphic expansion of weight ``h + 2s`` (``s <= 0``).
    Raises :class:`LadderError` if an epsilon factor vanishes.
    """
    if s > 0:
        raise ValueError("s must be a nonpositive integer")
    f = _poly_expansion(f)
    g = f.genus
    if any(c.degree() > 0 for _, c in f.items()):
        raise ValueError("delta_ladder expects a holomorphic input (r-degree 0)")
    start = h + 2 * s
    if start <= g + 1:
        warnings.warn(f"h + 2s = {start} <= g + 1 = {g + 1}: outside the holomorphic range",
                      RuntimeWarning, stacklevel=2)
    prefactor = Fraction(1)
    for i in range(-s):
        eps = epsilon(g, start + 2 * i)
        if eps == 0:
            raise LadderError(f"epsilon_{g}({start + 2 * i}) = 0 at ladder index {i}",
                              index=i, weight=start + 2 * i)
        prefactor *= eps
    out = f
    for i in range(-s):
        out = maass_delta(out, start + 2 * i)
    return out.scale(1 / prefactor).with_weight(WeightTag(h))
