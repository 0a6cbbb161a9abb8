import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from trunccong import zerosum as zs
from trunccong.binom import binom_mod_lucas
from trunccong.gfq import FqContext, build_field, roots_in_fq
from trunccong.modmath import BadParameter, PrimePower, mod_inv
from trunccong.zerosum import (
    BudgetExceeded,
    DegenerateDiscriminant,
    SumSpec,
    check_short_full_linkage,
    check_thm_zero,
    class_sum,
    cubic_splits,
    eval_range,
    eval_sum,
    eval_sum_naive,
    m_family_value,
    numeric_identities,
    special_value_scan,
    tail_checks,
    zero_set,
)


def test_eval_sum_examples():
    F7, F11 = FqContext(7), FqContext(11)
    assert eval_sum(SumSpec("short", F7(5), 7)) == F7(5)
    assert eval_sum(SumSpec("short", F11(7), 11)) == F11(0)
    assert eval_sum(SumSpec("short", F7(0), 7)) == F7(0)


def test_sum_spec_bounds():
    F = FqContext(7)
    assert SumSpec("short", F(1), 49).bounds() == (1, 17)
    assert SumSpec("full", F(1), 49, True).bounds() == (0, 49)
    assert SumSpec("mid", F(1), 49).bounds() == (25, 33)
    assert SumSpec("two-thirds", F(1), 7).bounds() == (1, 5)
    with pytest.raises(BadParameter):
        SumSpec("mid", F(1), 7, True)
    with pytest.raises(BadParameter):
        SumSpec("short", F(1), 10)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23, 29, 31])
def test_eval_sum_against_big_integers(p):
    F = FqContext(p)
    for a in range(p):
        for kind in ("short", "full", "mid"):
            lo, hi = SumSpec(kind, F(a), p).bounds()
            exact = sum(comb(3 * k, k) * a**k for k in range(lo, hi)) % p
            assert eval_sum(SumSpec(kind, F(a), p)) == F(exact)


fields = st.sampled_from([(5, 1), (7, 1), (5, 2), (7, 2), (3, 3), (11, 2)])


@given(fields, st.integers(0, 10**6), st.sampled_from(zs.RANGE_KINDS), st.integers(1, 2), st.booleans())
def test_streaming_matches_naive(pn, seed, kind, extra_exp, with_k0):
    p, n = pn
    ctx = build_field(p, n)
    a = ctx.random_element(random.Random(seed))
    q = p ** (n * extra_exp)
    if q > 5000:
        q = ctx.q
    if kind == "mid":
        with_k0 = False
    spec = SumSpec(kind, a, q, with_k0)
    assert eval_sum(spec, chunk=64) == eval_sum_naive(spec)


@given(
    st.sampled_from([5, 7, 11]),
    st.integers(0, 20),
    st.integers(0, 10),
    st.integers(0, 300),
    st.integers(0, 300),
    st.sampled_from([2, 3, 4]),
)
def test_eval_range_general_shift(p, a, e, lo, length, r):
    F = FqContext(p)
    hi = lo + length
    exact = sum(binom_mod_lucas(r * k + e, k, p) * pow(a, k, p) for k in range(lo, hi)) % p
    assert eval_range(F(a), lo, hi, e, chunk=37, r=r) == F(exact)


def test_budget():
    with pytest.raises(BudgetExceeded):
        eval_sum(SumSpec("full", FqContext(5)(2), 5**8), budget_terms=1000)
    with pytest.raises(BudgetExceeded):
        class_sum(5**8, 5, 2, 0, 5**8, budget_terms=100)


def test_class_sum():
    p, q = 7, 49
    hi = -(-q // 3)
    for d, j in ((2, 0), (2, 1), (3, 0), (4, 0)):
        direct = sum(comb(3 * k, k) for k in range(1, hi) if k % d == j % d) % p
        assert class_sum(q, p, d, j, hi) == direct


def test_cubic_splits_examples():
    F7, F11 = FqContext(7), FqContext(11)
    assert cubic_splits(F11(7))
    assert not cubic_splits(F7(5))
    assert zs.count_roots_in_fq(zs.splitting_cubic(F7(5)), F7) == 1
    ninth = F11(Fraction(1, 9))
    assert int(ninth) == 5 and not cubic_splits(ninth)
    assert zs.count_roots_in_fq(zs.splitting_cubic(ninth), F11) == 0
    with pytest.raises(DegenerateDiscriminant):
        cubic_splits(F7(0))
    with pytest.raises(DegenerateDiscriminant):
        cubic_splits(F11(Fraction(4, 27)))


def test_cubic_roots_at_a_equal_7_mod_11():
    F11 = FqContext(11)
    assert [int(r) for r in roots_in_fq(zs.splitting_cubic(F11(7)), F11)] == [2, 5, 10]


def test_root_counts_over_larger_q_agree():
    p = 7
    big = build_field(p, 2)
    for a in range(1, p):
        if a in (int(FqContext(p)(Fraction(1, 9))), int(FqContext(p)(Fraction(4, 27)))):
            continue
        via_gcd = zs.roots_over_prime_extension(a, p, p * p)
        assert via_gcd == zs.count_roots_in_fq(zs.splitting_cubic(big(a)), big)


@pytest.mark.parametrize("pn", [(7, 1), (11, 1), (13, 1), (5, 2)])
def test_thm_zero(pn):
    rep = check_thm_zero(build_field(*pn))
    assert rep.holds, rep.line()


def test_zero_set_at_eleven():
    F11 = FqContext(11)
    assert [int(a) for a in zero_set(F11)] == [7]
    rep = check_thm_zero(F11)
    assert rep.params["zero_set"] == [7]
    # 11 = 2 mod 9: a = 1/9 gives a vanishing sum with no roots at all
    assert rep.params["caveat_1/9"] == "sum=0,roots=0"


def test_thm_zero_above_scan_cap_is_skipped():
    rep = check_thm_zero(FqContext(101), scan_q=100)
    assert rep.skipped


def test_linkage():
    for p in (5, 7, 11, 13):
        assert check_short_full_linkage(PrimePower(p)).holds


def test_m_family_discriminant_is_a_square():
    for m in range(1, 50):
        a = m_family_value(m)
        assert a * (4 - 27 * a) == (a * m) ** 2


def test_special_value_examples():
    (rep,) = special_value_scan("a=1", [5])
    assert rep.holds and rep.params["q"] == 5**6
    (rep,) = special_value_scan("m-family", [(1, 5)])
    assert rep.holds and rep.params["a"] == 3
    (rep,) = special_value_scan("9h", [7])
    assert rep.holds


def test_special_value_exclusions_and_gating():
    (rep,) = special_value_scan("a=1", [23])
    assert rep.skipped and "excluded" in rep.params["skipped"]
    (rep,) = special_value_scan("a=i", [7])
    assert rep.skipped and rep.params["n"] == 12
    (rep,) = special_value_scan("a=i", [7], big=True, budget_terms=10**6)
    assert rep.skipped and "budget" in rep.params["skipped"]
    with pytest.raises(BadParameter):
        special_value_scan("a=2")


def test_i_equal_to_one_ninth_is_flagged():
    F41 = zs.prime_field(41)
    assert F41(Fraction(1, 9)) ** 2 == F41(-1)
    (rep,) = special_value_scan("a=i", [41], budget_terms=10**9)
    assert rep.params.get("coincides_with_1/9") is True
    (rep,) = special_value_scan("a=i", [13])
    assert "coincides_with_1/9" not in rep.params


def test_numeric_anchors_at_seven():
    got = {label: claim for label, _, claim in numeric_identities(PrimePower(7))}
    assert got["x=1/6 short"] == 6
    assert got["x=1/9 short"] == 1
    assert got["x=-1/27 short"] == 5
    assert got["x=1/3 short"] == 6
    # hand sums: 1 + 3/9 + 15/81 mod 7 and 1 + 3/3 + 15/9 mod 7
    assert (1 + 3 * mod_inv(9, 7) + 15 * mod_inv(81, 7)) % 7 == 1
    assert (1 + 3 * mod_inv(3, 7) + 15 * mod_inv(9, 7)) % 7 == 6
    for label, spec, claim in numeric_identities(PrimePower(7)):
        assert eval_sum(spec) == spec.a.ctx(claim), label


@pytest.mark.parametrize("p", [7, 11, 13, 41, 97])
@pytest.mark.parametrize("x", list(zs.TAIL_VALUES))
def test_tail_values(p, x):
    v = tail_checks(p, x)
    assert v.holds, v.witness
