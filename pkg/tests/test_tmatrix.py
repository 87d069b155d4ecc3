from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, strategies as st

from siegelq import HalfIntegralMatrix, det_rational, enumerate_psd, is_psd
from siegelq.errors import ResourceLimitError
from siegelq.tmatrix import add

H = HalfIntegralMatrix.from_entries


def test_psd_examples():
    assert is_psd(H([[1, Fraction(1, 2)], [Fraction(1, 2), 1]]))
    assert not is_psd(H([[1, 1], [1, 0]]))
    assert is_psd(HalfIntegralMatrix.zero(2))


def test_det_examples():
    assert det_rational(H([[1, Fraction(1, 2)], [Fraction(1, 2), 1]])) == Fraction(3, 4)
    assert det_rational(HalfIntegralMatrix.scalar(5)) == 5
    assert det_rational(HalfIntegralMatrix.diag(1, 1)) == 1


def test_add_examples():
    assert add(HalfIntegralMatrix.diag(1, 0), HalfIntegralMatrix.diag(0, 1)) == HalfIntegralMatrix.diag(1, 1)
    T = HalfIntegralMatrix.from_doubled([[2, 1], [1, 4]])
    assert T + HalfIntegralMatrix.zero(2) == T
    half = Fraction(1, 2)
    assert H([[1, half], [half, 1]]) + H([[1, -half], [-half, 1]]) == HalfIntegralMatrix.diag(2, 2)
    with pytest.raises(ValueError):
        add(T, HalfIntegralMatrix.scalar(1))


@pytest.mark.parametrize("rows", [[[1, 0], [0, 2]], [[2, 1], [2, 2]], [[2, 0, 0]]])
def test_invalid_doubled_rejected(rows):
    with pytest.raises(ValueError):
        HalfIntegralMatrix.from_doubled(rows)


def test_enumeration_examples():
    assert [T.entry(1, 1) for T in enumerate_psd(1, 3)] == [0, 1, 2, 3]
    assert set(enumerate_psd(2, 1)) == {HalfIntegralMatrix.zero(2), HalfIntegralMatrix.diag(1, 0),
                                        HalfIntegralMatrix.diag(0, 1)}
    assert len(enumerate_psd(2, 2)) == 10


def _brute(g, B):
    offdiag = [(i, j) for i in range(g) for j in range(i + 1, g)]
    found = set()
    for diag in product(range(B + 1), repeat=g):
        if sum(diag) > B:
            continue
        for off in product(range(-2 * B, 2 * B + 1), repeat=len(offdiag)):
            S = sympy.zeros(g)
            for i in range(g):
                S[i, i] = 2 * diag[i]
            for (i, j), v in zip(offdiag, off):
                S[i, j] = S[j, i] = v
            if S.is_positive_semidefinite:
                found.add(tuple(int(x) for x in S))
    return found


@pytest.mark.parametrize("g,B", [(1, 4), (2, 0), (2, 1), (2, 3), (2, 4)])
def test_enumeration_matches_brute_force(g, B):
    got = enumerate_psd(g, B)
    assert got == sorted(got)
    assert len(set(got)) == len(got)
    assert {T.doubled for T in got} == _brute(g, B)


def test_enumeration_cap():
    with pytest.raises(ResourceLimitError):
        enumerate_psd(3, 6, cap=100)


def test_canonical_order_is_lexicographic_on_doubled():
    mats = enumerate_psd(2, 3)
    assert [T.doubled for T in mats] == sorted(T.doubled for T in mats)


psd2 = st.sampled_from(enumerate_psd(2, 4))


@given(psd2, psd2, psd2)
def test_add_laws(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert (a + b).trace == a.trace + b.trace
    assert is_psd(a + b)


@given(st.integers(-6, 6), st.integers(0, 6), st.integers(0, 6))
def test_psd_agrees_with_sympy(b, a, c):
    T = HalfIntegralMatrix.from_doubled([[2 * a, b], [b, 2 * c]])
    M = sympy.Matrix([[2 * a, b], [b, 2 * c]])
    assert is_psd(T) == M.is_positive_semidefinite
    assert det_rational(T) == Fraction(int(M.det()), 4)
