from itertools import product

import pytest
from hypothesis import given, strategies as st

from siegelq import DominantWeight, dim_gl, dim_sp
from siegelq.weights import is_dominant


def test_dominance_examples():
    assert is_dominant((2, 0))
    assert not is_dominant((0, 1))
    assert is_dominant((3, 3, 1))
    with pytest.raises(ValueError):
        DominantWeight((1, 2))


def test_dimension_examples():
    assert dim_gl((2, 0)) == 3
    assert dim_gl((1, 1)) == 1
    assert dim_gl((1, 0, 0)) == 3
    assert dim_sp((1, 0)) == 4
    assert dim_sp((1, 1)) == 5
    assert dim_sp((0, 0)) == 1
    assert dim_gl(DominantWeight((2, 0), det_twist=3)) == 3


def test_known_sp_dimensions():
    # Sp_4: adjoint is Sym^2 (10); Sp_6: standard 6, Lambda^2_0 = 14, Lambda^3_0 = 14
    assert dim_sp((2, 0)) == 10
    assert dim_sp((1, 0, 0)) == 6
    assert dim_sp((1, 1, 0)) == 14
    assert dim_sp((1, 1, 1)) == 14
    assert dim_sp((2, 0, 0)) == 21


def test_non_dominant_rejected():
    with pytest.raises(ValueError):
        dim_sp((0, 1))
    with pytest.raises(ValueError):
        dim_gl((1, 0), g=3)


def dominant(g):
    return st.lists(st.integers(0, 6), min_size=g, max_size=g).map(lambda v: tuple(sorted(v, reverse=True)))


@given(st.integers(1, 3).flatmap(dominant))
def test_dimensions_positive_and_twist_invariant(kappa):
    assert dim_gl(kappa) >= 1 and dim_sp(kappa) >= 1
    assert dim_gl(tuple(k + 1 for k in kappa)) == dim_gl(kappa)
    assert dim_sp(kappa) >= dim_gl(kappa)


def test_gl_matches_tableaux_count():
    def ssyt(shape, n):
        cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]
        total = 0
        for fill in product(range(1, n + 1), repeat=len(cells)):
            t = dict(zip(cells, fill))
            if all(t[(i, j)] <= t.get((i, j + 1), n + 1) for i, j in cells) and \
                    all(t[(i, j)] < t.get((i + 1, j), n + 1) for i, j in cells):
                total += 1
        return total

    for kappa in [(3, 0), (2, 2), (3, 1), (1, 1, 0), (2, 1, 0), (3, 2, 1)]:
        assert dim_gl(kappa) == ssyt(kappa, len(kappa))
