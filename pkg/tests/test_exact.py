from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ptvirasoro.exact import (
    AmbiguousSolution,
    NoSolution,
    QSeries,
    RatFn,
    functional_equation_residual,
    reconstruct_rational,
    rf_series,
    solve_exact,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
polys = st.lists(small, min_size=1, max_size=4)


@st.composite
def ratfns(draw, max_deg=3):
    num = draw(st.lists(small, min_size=1, max_size=max_deg + 1))
    den = [F(1)] + draw(st.lists(small, min_size=0, max_size=max_deg))
    return RatFn(num, den, draw(st.integers(-1, 2)))


def ch5_closed():
    return RatFn([0, 15, -75, 75, -15], [4, 12, 12, 4])


# ---- RatFn ----


def test_canonical_form():
    f = RatFn([0, 2, 2], [2, 2])
    assert f == RatFn([0, 1])
    assert f.den == (F(1),)
    assert f.shift == 1
    assert RatFn([1], [0, 1]).shift == -1


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        RatFn([1], [0])


def test_str_format():
    assert str(RatFn([0, F(21, 4)])) == "21/4 q"
    assert str(RatFn([0, 3, -3], [1, 1])) == "(3 q - 3 q^2)/(1 + q)"


@settings(max_examples=60, deadline=None)
@given(ratfns(), ratfns(), ratfns())
def test_ratfn_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == RatFn()


@settings(max_examples=60, deadline=None)
@given(ratfns())
def test_invert_q_involution(f):
    assert f.invert_q().invert_q() == f


# ---- QSeries ----


@settings(max_examples=60, deadline=None)
@given(ratfns(), ratfns())
def test_series_is_a_ring_map(f, g):
    order = 8
    assert rf_series(f + g, order) == rf_series(f, order) + rf_series(g, order)
    prod = rf_series(f, order) * rf_series(g, order)
    assert prod.order >= order - 1
    assert rf_series(f * g, prod.order) == prod


@settings(max_examples=60, deadline=None)
@given(ratfns(), st.integers(3, 6), st.integers(7, 12))
def test_truncation_consistent(f, a, b):
    assert rf_series(f, b).truncate(a) == rf_series(f, a)


def test_series_order_is_pessimistic():
    s = QSeries(0, [1, 2, 3], 2) + QSeries(0, [1, 1, 1, 1, 1], 4)
    assert s.order == 2
    with pytest.raises(IndexError):
        s[3]


def test_rf_series_examples():
    s = rf_series(ch5_closed(), 4)
    assert s[1] == F(15, 4)
    # (15/4) q (1 - 5q)(1 - 3q + ...) -> q^2 coefficient -(15/4)(5 + 3)
    assert s[2] == -F(15, 4) * 8
    z = rf_series(RatFn(), 10)
    assert z.is_zero() and z.order == 10
    t = rf_series(RatFn([0, F(45, 4)]), 3)
    assert [t[e] for e in range(4)] == [0, F(45, 4), 0, 0]


# ---- functional equation ----


def test_functional_equation_examples():
    assert functional_equation_residual(RatFn([0, F(45, 4)]), 6, 2).is_zero()
    bad = functional_equation_residual(RatFn([0, 1]), 5, 2)
    assert bad == RatFn([2], [1], -1)
    f = RatFn([0, 5, -220, 630, -220, 5], [4, 16, 24, 16, 4])
    assert functional_equation_residual(f, 8, 2).is_zero()


# ---- linear algebra and reconstruction ----


def test_solve_exact():
    x, nullity = solve_exact([[1, 2], [3, 4]], [5, 6])
    assert x == [F(-4), F(9, 2)] and nullity == 0
    x, nullity = solve_exact([[1, 1], [2, 2]], [1, 2])
    assert nullity == 1
    with pytest.raises(NoSolution):
        solve_exact([[1, 1], [2, 2]], [1, 3])


def test_reconstruct_polynomial():
    assert reconstruct_rational(rf_series(RatFn([0, F(45, 4)]), 6), 1, 0) == RatFn([0, F(45, 4)])


def test_reconstruct_zero():
    assert reconstruct_rational(QSeries(0, [], 8), 2, 2).is_zero()


def test_reconstruct_ch5_coefficients():
    # <ch_5(1)>_{n+1} = (-1)^n (15/2)(1 + 3n^2) for n >= 1, and 15/4 at n = 0
    coeffs = {1: F(15, 4)}
    coeffs.update({n + 1: (-1) ** n * F(15, 2) * (1 + 3 * n * n) for n in range(1, 10)})
    s = QSeries.from_dict(coeffs, 10)
    assert reconstruct_rational(s, 4, 3) == ch5_closed()


def test_reconstruct_rejects_non_rational():
    s = QSeries.from_dict({e: F(1, e) for e in range(1, 12)}, 11)
    with pytest.raises(NoSolution):
        reconstruct_rational(s, 2, 2)


def test_reconstruct_strict_flags_unsaturated_bounds():
    s = rf_series(RatFn([0, 1]), 10)
    assert reconstruct_rational(s, 3, 3) == RatFn([0, 1])
    with pytest.raises(AmbiguousSolution) as err:
        reconstruct_rational(s, 3, 3, strict=True)
    assert err.value.candidate == RatFn([0, 1])


def test_reconstruct_needs_enough_terms():
    with pytest.raises(ValueError):
        reconstruct_rational(QSeries(0, [1, 2], 1), 2, 2)


@settings(max_examples=60, deadline=None)
@given(ratfns())
def test_reconstruct_inverts_expansion(f):
    dn, dd = f.degrees
    lo = min(f.shift, 0) if not f.is_zero() else 0
    s = rf_series(f, 8 + abs(lo) + max(f.shift, 0))
    assert reconstruct_rational(s, 3 + max(f.shift, 0), 3) == f
