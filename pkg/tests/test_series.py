from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from trunccong.binom import binom_mod_lucas
from trunccong.series import (
    NonUnitConstant,
    NonzeroInnerConstant,
    RationalSeries,
    binomial_series,
    check_cardano_series,
    check_section2_identities,
    fuss_catalan,
    series_Br,
    series_compose,
    series_inv,
    series_pow_rational,
    series_y,
)

F = Fraction
fractions = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 20))
nonzero = st.builds(Fraction, st.integers(1, 50) | st.integers(-50, -1), st.integers(1, 20))


@st.composite
def series_st(draw, order=8, unit=False):
    cs = draw(st.lists(fractions, min_size=order, max_size=order))
    if unit:
        cs[0] = draw(nonzero)
    return RationalSeries(tuple(cs))


def test_generating_functions():
    assert series_Br(1, 6).coeffs == (1,) * 6
    assert series_Br(3, 4).coeffs == (1, 1, 3, 12)
    assert series_Br(2, 4).coeffs == (1, 1, 2, 5)
    assert series_y(3, 0, 4).coeffs == (1, 3, 15, 84)
    assert series_y(3, 1, 3).coeffs == (1, 4, 21)
    assert series_y(2, 0, 4).coeffs == (1, 2, 6, 20)


def test_operation_examples():
    assert binomial_series(F(1, 3), 3).coeffs == (1, F(1, 3), F(-1, 9))
    x = RationalSeries.var(10)
    assert series_inv(1 - x).coeffs == (1,) * 10
    s = RationalSeries.var(4)
    assert series_compose(s * s, s / (1 + s)).coeffs == (0, 0, 1, -2)


def test_errors():
    x = RationalSeries.var(5)
    with pytest.raises(NonUnitConstant):
        series_inv(x)
    with pytest.raises(NonzeroInnerConstant):
        series_compose(x, 1 + x)
    with pytest.raises(NonUnitConstant):
        series_pow_rational(2 + x, F(1, 2))


@given(series_st(unit=True))
def test_inverse(f):
    assert (f * series_inv(f)).coeffs == RationalSeries.const(1, f.order).coeffs


@given(series_st(), series_st(), series_st())
def test_compose_is_a_ring_map(f, g, h):
    h = h - h.coeffs[0]
    assert series_compose(f * g, h) == series_compose(f, h) * series_compose(g, h)
    assert series_compose(f + g, h) == series_compose(f, h) + series_compose(g, h)


@given(st.builds(Fraction, st.integers(-12, 12), st.integers(1, 9)), st.integers(1, 3))
def test_rational_powers_multiply(a, k):
    x = RationalSeries.var(10)
    f = 1 + x + 3 * x * x
    assert series_pow_rational(series_pow_rational(f, a), k) == series_pow_rational(f, a * k)


def test_cube_root_cubes_back():
    s = RationalSeries.var(20)
    assert series_pow_rational(1 + s, F(1, 3)) ** 3 == 1 + s


def test_fuss_catalan_integral_and_equal_to_power():
    for r in range(1, 6):
        for e in range(1, 5):
            fc = fuss_catalan(r, e, 30)
            assert all(c.denominator == 1 for c in fc.coeffs)
            assert series_Br(r, 30) ** e == fc


def test_all_section_identities_hold():
    reports = check_section2_identities(5, 4, 40)
    assert reports and all(r.holds for r in reports), [r.line() for r in reports if not r.holds]
    names = {r.theorem for r in reports}
    assert "oracle:functional-equation" in names and "oracle:ternary-beta-form" in names


def test_cardano_series():
    rep = check_cardano_series(40)
    assert rep.holds, rep.line()
    assert check_cardano_series(20).holds


def test_coefficients_reduce_to_lucas_values():
    for p in (5, 7, 11):
        for e in range(5):
            y = series_y(3, e, 40)
            for k, c in enumerate(y.coeffs):
                assert c.numerator % p == binom_mod_lucas(3 * k + e, k, p)
