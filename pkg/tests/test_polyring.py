from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from siegelq import SparsePolynomial, poly_derive, poly_mul, poly_substitute
from siegelq.errors import SubstitutionError
from siegelq.polyring import derivation, var_index, variable_pairs

r11 = SparsePolynomial.variable(1, 1, 1)
R11, R12, R22 = (SparsePolynomial.variable(2, i, j) for i, j in variable_pairs(2))


def test_mul_examples():
    assert poly_mul(r11, r11) == r11 ** 2
    assert poly_mul(1 + r11, 1 - r11) == 1 - r11 ** 2
    assert poly_mul(R12, R11 + R22) == R11 * R12 + R12 * R22


def test_substitute_examples():
    assert poly_substitute(1 + 12 * r11, {(1, 1): 0}) == SparsePolynomial.constant(1, 1)
    assert poly_substitute(r11 ** 2, {(1, 1): r11 + 1}) == r11 ** 2 + 2 * r11 + 1
    assert poly_substitute(R12, {(1, 2): -(R11 * R22)}) == -(R11 * R22)


def test_substitute_requires_occurring_variables():
    with pytest.raises(SubstitutionError):
        poly_substitute(R11 * R12, {(1, 1): 1})
    # variables that do not occur need no assignment
    assert poly_substitute(R11, {(1, 1): 2}) == SparsePolynomial.constant(2, 2)


def test_derive_examples():
    assert poly_derive(r11 ** 3, (1, 1)) == 3 * r11 ** 2
    assert poly_derive(SparsePolynomial.constant(1, 7), (1, 1)) == SparsePolynomial.zero(1)
    assert poly_derive(R11 * R12, (1, 2)) == R11


def test_no_stored_zeros_and_symmetric_index():
    p = R11 - R11
    assert not p and len(p) == 0
    assert var_index(2, 2, 1) == var_index(2, 1, 2)
    assert SparsePolynomial.variable(2, 2, 1) == R12


def test_genus_mismatch():
    with pytest.raises(ValueError):
        poly_mul(r11, R11)


# -- properties against a sympy oracle ---------------------------------------------

SYMS = sympy.symbols("r11 r12 r22")


def to_sympy(p):
    return sum((sympy.Rational(c.numerator, c.denominator) * sympy.prod([s ** k for s, k in zip(SYMS, e)])
                for e, c in p.items()), sympy.Integer(0))


coef = st.fractions(min_value=-10, max_value=10, max_denominator=6)
exps = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
polys = st.dictionaries(exps, coef, max_size=4).map(lambda d: SparsePolynomial(2, d))


@given(polys, polys, polys)
def test_ring_axioms(p, q, s):
    assert (p * q) * s == p * (q * s)
    assert p * (q + s) == p * q + p * s
    assert p + q == q + p
    assert to_sympy(p * q).expand() == (to_sympy(p) * to_sympy(q)).expand()
    assert all(c != 0 for _, c in (p * q).items())


@given(polys, polys, st.sampled_from(list(variable_pairs(2))))
def test_leibniz(p, q, var):
    assert poly_derive(p * q, var) == poly_derive(p, var) * q + p * poly_derive(q, var)
    sym = SYMS[var_index(2, *var)]
    assert to_sympy(poly_derive(p, var)).expand() == sympy.diff(to_sympy(p), sym).expand()


@settings(max_examples=50)
@given(polys, polys, polys, polys, polys)
def test_substitution_is_homomorphism(p, q, a, b, c):
    assign = {(1, 1): a, (1, 2): b, (2, 2): c}
    assert poly_substitute(p * q, assign) == poly_substitute(p, assign) * poly_substitute(q, assign)
    assert poly_substitute(p + q, assign) == poly_substitute(p, assign) + poly_substitute(q, assign)


@given(polys, polys)
def test_derivation_extends_linearly(p, q):
    images = {k: SparsePolynomial.gens(2)[k] ** 2 for k in range(3)}
    assert derivation(p * q, images) == derivation(p, images) * q + p * derivation(q, images)


def test_evaluate_and_repr():
    p = Fraction(1, 2) * R11 * R22 - R12 ** 2
    assert p.evaluate({(1, 1): 2, (1, 2): 1, (2, 2): 3}) == 2
    assert "r11" in repr(p) and "r12" in repr(p)
