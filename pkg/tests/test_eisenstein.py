import json
from fractions import Fraction

import pytest
import sympy

from siegelq import (HalfIntegralMatrix, InterchangeError, bernoulli, eisenstein_q,
                     load_coefficient_table, nearly_eisenstein, padic_realize, serialize, SparsePolynomial)
from siegelq.eisenstein import divisor_sigma_table
from siegelq.interchange import read_table

t = HalfIntegralMatrix.scalar


def test_bernoulli_examples():
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(0) == 1
    assert bernoulli(3) == 0
    assert bernoulli(1) == Fraction(-1, 2)


def test_bernoulli_against_sympy():
    for n in range(0, 41):
        b = sympy.bernoulli(n)
        if n == 1:
            b = -b if b > 0 else b  # sympy >= 1.12 uses B1 = +1/2
        assert bernoulli(n) == Fraction(int(b.p), int(b.q)), n


def test_sigma_table_against_sympy():
    for k in (0, 1, 3, 7):
        table = divisor_sigma_table(k, 60)
        assert table[1:] == [int(sympy.divisor_sigma(n, k)) for n in range(1, 61)]


def test_eisenstein_examples():
    assert eisenstein_q(4, 3)[t(1)] == 240
    assert eisenstein_q(6, 3)[t(1)] == -504
    assert eisenstein_q(8, 3)[t(2)] == 61920
    assert eisenstein_q(12, 2)[t(1)] == Fraction(65520, 691)
    for h in (3, 2, 0, -4):
        with pytest.raises(ValueError):
            eisenstein_q(h, 5)


def test_one_dimensionality():
    assert eisenstein_q(4, 30) ** 2 == eisenstein_q(8, 30)
    assert eisenstein_q(4, 30) * eisenstein_q(6, 30) == eisenstein_q(10, 30)
    assert eisenstein_q(4, 20) * eisenstein_q(10, 20) == eisenstein_q(14, 20)


def test_nearly_eisenstein_examples():
    f = nearly_eisenstein(6, -1, 10)
    assert max(c.degree() for _, c in f.items()) <= 1
    assert padic_realize(f)[t(1)] == 60
    assert nearly_eisenstein(4, 0, 10) == eisenstein_q(4, 10).change_ring(f.ring)
    g = nearly_eisenstein(8, -2, 5)
    # delta_6 delta_4 (1) = delta_6(4r) = 20 r^2, and the ladder divides by 4 * 6
    r = SparsePolynomial.variable(1, 1, 1)
    assert g[t(0)] == Fraction(5, 6) * r ** 2
    with pytest.raises(ValueError):
        nearly_eisenstein(4, 1, 5)
    with pytest.raises(ValueError):
        nearly_eisenstein(6, -2, 5)


def _table(terms, genus=2, bound=2, header=None):
    doc = {"genus": genus, "level": 1, "trace_bound": bound, "ring": {"type": "QQ"},
           "weight_tag": {"h": 4, "kappa": None}, "terms": terms}
    if header is not None:
        doc["header"] = header
    return json.dumps(doc, indent=1)


def test_load_table(tmp_path):
    header = {"source": "hand-written test table", "normalization": "arithmetic", "citation": "none"}
    terms = [{"S": [[0, 0], [0, 0]], "coeff": [1, 1]},
             {"S": [[2, 0], [0, 0]], "coeff": [240, 1]},
             {"S": [[2, 1], [1, 2]], "coeff": [13440, 1]}]
    path = tmp_path / "table.json"
    path.write_text(_table(terms, header=header))
    f = load_coefficient_table(path)
    assert len(f) == 3 and f.weight.h == 4
    assert read_table(path).header == header


@pytest.mark.parametrize("S,fragment", [([[2, 4], [4, 2]], "positive semi-definite"),
                                        ([[1, 0], [0, 2]], "odd diagonal"),
                                        ([[4, 0], [0, 2]], "trace")])
def test_load_table_rejections(tmp_path, S, fragment):
    terms = [{"S": [[0, 0], [0, 0]], "coeff": [1, 1]}, {"S": S, "coeff": [1, 1]}]
    path = tmp_path / "bad.json"
    path.write_text(_table(terms))
    with pytest.raises(InterchangeError) as exc:
        load_coefficient_table(path)
    assert fragment in str(exc.value)
    assert exc.value.term == 1
    assert exc.value.line is not None and "line" in str(exc.value)


def test_bad_normalization_tag(tmp_path):
    path = tmp_path / "t.json"
    path.write_text(_table([], header={"normalization": "whatever"}))
    with pytest.raises(InterchangeError):
        load_coefficient_table(path)


def test_generated_series_round_trip_as_table(tmp_path):
    path = tmp_path / "e6.json"
    path.write_text(serialize(eisenstein_q(6, 12), header={"source": "siegelq", "normalization": "normalized",
                                                          "citation": "generated"}))
    assert load_coefficient_table(path).identical(eisenstein_q(6, 12))
