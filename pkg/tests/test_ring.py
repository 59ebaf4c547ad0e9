import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sparsege.ring import (FLOAT64, INTEGER, RATIONAL, DivisionUnavailableError, Domain, Kind,
                           eliminate, eliminate_field, eliminate_fraction_free, is_zero)
from sparsege.sparsemat import SparseRow

from conftest import dense_combo, row


def test_is_zero():
    assert is_zero(0, INTEGER)
    assert not is_zero(1, INTEGER)
    assert is_zero(Fraction(0), RATIONAL)
    f = Domain(Kind.FLOAT64, epsilon=1e-10)
    assert is_zero(5e-11, f)
    assert not is_zero(1e-9, f)
    assert is_zero(-1e-10, f)


def test_float_domain_requires_positive_epsilon():
    with pytest.raises(ValueError):
        Domain(Kind.FLOAT64, epsilon=0.0)


def test_eliminate_field_examples():
    r = row(3, {0: Fraction(4), 1: Fraction(5)})
    u = row(3, {0: Fraction(2), 2: Fraction(1)})
    expected = dense_combo(r, u, 1, -2)  # r - (4/2) u
    assert expected == {1: 5, 2: -2}
    assert eliminate_field(r, u, RATIONAL, 0).to_dict() == expected

    same = row(2, {0: Fraction(1), 1: Fraction(1)})
    assert eliminate_field(same, same, RATIONAL).is_null()
    assert eliminate_field(row(1, {0: Fraction(3)}), row(1, {0: Fraction(2)}), RATIONAL).is_null()


def test_eliminate_field_rejects_integer_domain():
    r = row(2, {0: 4})
    with pytest.raises(DivisionUnavailableError):
        eliminate_field(r, r, INTEGER)


def test_eliminate_requires_common_start():
    with pytest.raises(ValueError):
        eliminate_fraction_free(row(3, {1: 1}), row(3, {0: 1}), 0)


def test_fraction_free_examples():
    r = row(3, {0: 4, 2: 6})
    u = row(3, {0: 6, 1: 2})
    expected = dense_combo(r, u, 3, -2)  # g = 2
    assert expected == {1: -4, 2: 18}
    assert eliminate_fraction_free(r, u, 0).to_dict() == expected

    same = row(2, {0: 1, 1: 1})
    assert eliminate_fraction_free(same, same, 0).is_null()

    r = row(2, {0: -3, 1: 1})
    u = row(2, {0: 3, 1: 5})
    expected = dense_combo(r, u, 1, 1)  # g = 3: 1*r - (-1)*u
    assert expected == {1: 6}
    assert eliminate_fraction_free(r, u, 0).to_dict() == expected


def test_naive_and_content_stripping():
    r = row(3, {0: 4, 2: 6})
    u = row(3, {0: 6, 1: 2})
    assert eliminate_fraction_free(r, u, naive=True).to_dict() == dense_combo(r, u, 6, -4)
    assert eliminate_fraction_free(r, u, strip_content=True).to_dict() == {1: -2, 2: 9}
    d = Domain(Kind.INTEGER, naive_ff=True)
    assert eliminate(r, u, d).to_dict() == {1: -8, 2: 36}


ints = st.integers(-30, 30)


@st.composite
def pair(draw, k=8):
    rd = [draw(ints.filter(bool))] + [draw(ints) for _ in range(k - 1)]
    ud = [draw(ints.filter(bool))] + [draw(ints) for _ in range(k - 1)]
    return SparseRow.from_dense(rd), SparseRow.from_dense(ud)


@given(pair())
def test_fraction_free_matches_big_integer_oracle(p):
    r, u = p
    g = math.gcd(u.lead, r.lead)
    oracle = {j: (u.lead * x - r.lead * y) // g
              for j, (x, y) in enumerate(zip(r.to_dense(), u.to_dense()))}
    assert all((u.lead * x - r.lead * y) % g == 0 for x, y in zip(r.to_dense(), u.to_dense()))
    out = eliminate_fraction_free(r, u)
    assert out.to_dict() == {j: v for j, v in oracle.items() if v != 0}
    assert all(isinstance(v, int) for v in out.vals)
    assert out.start > 0


@given(pair(), st.integers(1, 50))
def test_fraction_free_gcd_scaling(p, s):
    r, u = p
    base = eliminate_fraction_free(r, u)
    scaled = eliminate_fraction_free(r.map(lambda v: s * v), u.map(lambda v: s * v))
    assert scaled.cols == base.cols
    assert scaled.vals == [s * v for v in base.vals]


@given(pair())
def test_field_kernel_is_schur_row(p):
    r, u = p
    r, u = r.map(Fraction), u.map(Fraction)
    alpha = r.lead / u.lead
    out = eliminate_field(r, u, RATIONAL)
    assert out.to_dict() == dense_combo(r, u, 1, -alpha)
    assert out.start > 0


def test_float_kernel_within_4_ulps_of_dense():
    rng = random.Random(3)
    for _ in range(500):
        rd = [rng.uniform(-10, 10) if rng.random() < 0.6 else 0.0 for _ in range(12)]
        ud = [rng.uniform(-10, 10) if rng.random() < 0.6 else 0.0 for _ in range(12)]
        rd[0] = rng.uniform(0.5, 10)
        ud[0] = rng.uniform(0.5, 10)
        r, u = SparseRow.from_dense(rd), SparseRow.from_dense(ud)
        alpha = rd[0] / ud[0]
        out = eliminate_field(r, u, FLOAT64).to_dict()
        for j in range(1, 12):
            dense = rd[j] - alpha * ud[j]
            got = out.get(j, 0.0)
            if abs(dense) <= FLOAT64.epsilon:
                assert j not in out
            else:
                assert abs(got - dense) <= 4 * math.ulp(dense)
        assert 0 not in out
