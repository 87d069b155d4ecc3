import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from helpers import rand_expansion  # noqa: E402
from siegelq import (QQ, HalfIntegralMatrix, PolynomialRing, QExpansion, SparsePolynomial,  # noqa: E402
                     congruence_check, contract_expansion, det_form, dp_operator, e2_star, eisenstein_e2,
                     eisenstein_q, padic_realize, reduce_mod, theta_op, weight_congruent)
from siegelq.errors import IncompatibleExpansions, IntegralityError  # noqa: E402
from siegelq.nearcalc import SymForm  # noqa: E402
from siegelq.rings import Residue, ResidueRing  # noqa: E402

t = HalfIntegralMatrix.scalar


def test_reduce_examples():
    red = reduce_mod(eisenstein_q(4, 30), 5, 1)
    assert red == QExpansion.one(1, 1, 30, ResidueRing(5, 1))
    with pytest.raises(IntegralityError) as exc:
        reduce_mod(eisenstein_q(4, 5) / 5, 5)
    assert exc.value.witness == (t(0), None, Fraction(1, 5))
    assert reduce_mod(QExpansion.zero(1, 1, 4), 7, 2).is_zero()


def test_reduce_rejects_p_dividing_level():
    with pytest.raises(ValueError):
        reduce_mod(QExpansion.one(1, 5, 3), 5)


def test_reduce_higher_precision():
    red = reduce_mod(eisenstein_q(4, 5), 5, 2)
    assert red[t(1)] == Residue(240 % 25, 5, 2)
    assert int(reduce_mod(QExpansion.from_genus1([Fraction(1, 3)]), 5, 2)[t(0)]) == 17  # 3 * 17 = 51


def test_dp_examples():
    q = QExpansion(1, 1, 1, QQ, {t(1): 1})
    u = SymForm.linear(1, {(1, 1): 1})
    assert dp_operator(q, 1)[t(1)] == u
    assert dp_operator(q, 3)[t(1)] == u ** 3
    T = HalfIntegralMatrix.diag(1, 0)
    f = QExpansion(2, 1, 1, QQ, {T: 1})
    assert dp_operator(f, 1)[T] == SymForm.linear(2, {(1, 1): 1})
    with pytest.raises(ValueError):
        dp_operator(q, 0)


def test_dp_off_diagonal_and_level():
    T = HalfIntegralMatrix.from_doubled([[2, 1], [1, 2]])
    f = QExpansion(2, 3, 2, QQ, {T: 6})
    assert dp_operator(f, 1)[T] == SymForm.linear(2, {(1, 1): 2, (1, 2): 2, (2, 2): 2})


def test_theta_examples():
    assert theta_op(eisenstein_q(4, 5))[t(1)] == 240
    assert theta_op(QExpansion.one(1, 1, 5)).is_zero()
    T = HalfIntegralMatrix.from_doubled([[2, 1], [1, 2]])
    assert theta_op(QExpansion(2, 1, 2, QQ, {T: 4}))[T] == 3
    assert theta_op(eisenstein_q(4, 5)).weight.h == 6


def test_theta_level_scaling():
    f = QExpansion(1, 2, 4, QQ, {t(3): 1})
    assert theta_op(f)[t(3)] == Fraction(3, 2)


def test_theta_mod_2_refuses_half_determinants():
    T = HalfIntegralMatrix.from_doubled([[2, 1], [1, 2]])
    f = QExpansion(2, 1, 2, ResidueRing(2, 3), {T: Residue(1, 2, 3)})
    with pytest.raises(ValueError):
        theta_op(f)
    g = QExpansion(2, 1, 2, ResidueRing(2, 3), {HalfIntegralMatrix.diag(1, 1): Residue(3, 2, 3)})
    assert theta_op(g)[HalfIntegralMatrix.diag(1, 1)] == Residue(3, 2, 3)


def test_congruence_examples():
    assert congruence_check(eisenstein_q(4, 50), eisenstein_q(8, 50), 5, 1)
    res = congruence_check(eisenstein_q(4, 10), eisenstein_q(6, 10), 5, 1)
    assert not res
    T, a, b = res.witness
    assert T == t(1) and int(a) == 0 and int(b) == 1
    f = eisenstein_q(6, 10)
    assert congruence_check(f, f, 7, 3)
    with pytest.raises(IncompatibleExpansions):
        congruence_check(eisenstein_q(4, 10), eisenstein_q(4, 9), 5)


def test_kummer_style_congruences():
    # E_k = E_k' mod p whenever k = k' mod p - 1 and p - 1 does not divide k
    for p, k1, k2 in [(7, 4, 10), (11, 4, 14), (13, 6, 18)]:
        assert weight_congruent(k1, k2, p, 1)
        assert congruence_check(eisenstein_q(k1, 30), eisenstein_q(k2, 30), p, 1)
    assert weight_congruent(4, 24, 5, 2)
    assert not weight_congruent(4, 8, 5, 2)
    assert not weight_congruent(4, 6, 5, 1)


def test_realize_examples():
    assert padic_realize(e2_star(10)) == eisenstein_e2(10)
    E4 = eisenstein_q(4, 5)
    assert padic_realize(E4) == E4
    only_r = QExpansion(1, 1, 0, PolynomialRing(1), {t(0): 12 * SparsePolynomial.variable(1, 1, 1)})
    assert padic_realize(only_r).is_zero()


def test_det_contraction_constant():
    rng = random.Random(2)
    f = rand_expansion(rng, 2, 4, "QQ", k=20)
    assert contract_expansion(dp_operator(f, 2), det_form(2)) == theta_op(f)


def _integral(rng, genus, bound, k):
    f = rand_expansion(rng, genus, bound, "QQ", k=k)
    return f.map_coefficients(lambda T, c: Fraction(c.numerator, c.denominator if c.denominator % 5 else 1), QQ)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 2), st.integers(1, 3))
def test_reduce_is_ring_homomorphism(seed, genus, m):
    rng = random.Random(seed)
    f, g = _integral(rng, genus, 3, 5), _integral(rng, genus, 3, 5)
    assert reduce_mod(f * g, 5, m) == reduce_mod(f, 5, m) * reduce_mod(g, 5, m)
    assert reduce_mod(f + g, 5, m) == reduce_mod(f, 5, m) + reduce_mod(g, 5, m)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 2), st.sampled_from([3, 5, 7]))
def test_theta_commutes_with_reduction(seed, genus, p):
    rng = random.Random(seed)
    f = _integral(rng, genus, 3, 6)
    f = f.map_coefficients(lambda T, c: Fraction(c.numerator, 1), QQ)
    assert theta_op(reduce_mod(f, p, 2)) == reduce_mod(theta_op(f), p, 2)
