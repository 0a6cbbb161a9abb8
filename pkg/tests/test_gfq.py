import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from trunccong.gfq import (
    FqContext,
    NotPresent,
    build_field,
    count_roots_in_fq,
    find_special_element,
    is_irreducible,
    is_squarefree,
    roots_in_fq,
)
from trunccong.modmath import ZeroInverse
from trunccong.polyring import DensePoly


def test_build_field_examples():
    assert build_field(5, 1).q == 5
    FqContext(5, 2, [2, 0, 1])
    assert not is_irreducible(DensePoly([-2, 0, 1], 7))
    with pytest.raises(ValueError):
        FqContext(7, 2, [-2, 0, 1])


def test_build_field_is_deterministic():
    a, b = build_field(7, 3, seed=4), build_field(7, 3, seed=4)
    assert a.modpoly == b.modpoly


@pytest.mark.parametrize("p,n", [(3, 2), (5, 2), (7, 3), (11, 2), (31, 2), (5, 6), (3, 6)])
def test_fermat(p, n):
    ctx = build_field(p, n)
    rng = random.Random(p * n)
    for _ in range(200):
        a = ctx.random_element(rng)
        assert a**ctx.q == a
        x = a
        for _ in range(n):
            x = x.frobenius()
        assert x == a
        if a:
            assert a ** (ctx.q - 1) == ctx.one
            assert a * a.inverse() == ctx.one


fields = st.sampled_from([(5, 2), (7, 2), (3, 3), (11, 1)])


@given(fields, st.randoms(use_true_random=False))
def test_field_axioms(pn, rnd):
    ctx = build_field(*pn)
    a, b, c = (ctx.random_element(rnd) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == ctx.zero
    if b:
        assert (a / b) * b == a


def test_zero_inverse():
    with pytest.raises(ZeroInverse):
        build_field(5, 2).zero.inverse()


def test_special_element_examples():
    assert int(find_special_element(FqContext(5), "i")) in (2, 3)
    assert int(find_special_element(FqContext(7), "omega")) in (2, 4)
    with pytest.raises(NotPresent):
        find_special_element(FqContext(7), "i")


@pytest.mark.parametrize("p", [3, 7, 11, 19])
def test_special_elements_in_quadratic_extension(p):
    ctx = build_field(p, 2)
    i = find_special_element(ctx, "i")
    assert i * i == ctx(-1)
    w = find_special_element(ctx, "omega")
    assert w * w + w + 1 == ctx.zero
    r = find_special_element(ctx, "sqrt", 5)
    assert r * r == ctx(5)


def test_root_count_examples():
    assert count_roots_in_fq([1, 0, 1], FqContext(5)) == 2
    assert count_roots_in_fq([1, 0, 1], FqContext(7)) == 0
    ctx = FqContext(11)
    f = [7, 1, 9, 4]
    assert count_roots_in_fq(f, ctx) == 3
    assert [int(r) for r in roots_in_fq(f, ctx)] == [2, 5, 10]
    assert is_squarefree(f, ctx)
    assert not is_squarefree([1, 2, 1], ctx)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_root_count_matches_brute_force_prime_field(p):
    ctx = FqContext(p)
    pts = list(ctx.elements())
    for deg in (1, 2, 3):
        for low in itertools.product(range(p), repeat=deg):
            f = list(low) + [1]
            brute = sum(1 for x in pts if _ev(f, x).is_zero())
            assert count_roots_in_fq(f, ctx) == brute, f


@pytest.mark.parametrize("p", [3, 5, 7])
def test_root_count_matches_brute_force_quadratic_extension(p):
    ctx = build_field(p, 2)
    pts = list(ctx.elements())
    for deg in (1, 2, 3):
        for low in itertools.product(range(p), repeat=deg):
            f = list(low) + [1]
            brute = sum(1 for x in pts if _ev(f, x).is_zero())
            assert count_roots_in_fq(f, ctx) == brute, f
            assert len(roots_in_fq(f, ctx)) == brute


def test_root_counts_do_not_depend_on_the_defining_polynomial():
    rng = random.Random(0)
    a, b = build_field(13, 2, seed=1), build_field(13, 2, seed=2)
    assert a.modpoly != b.modpoly
    for _ in range(50):
        f = [rng.randrange(13) for _ in range(3)] + [1]
        assert count_roots_in_fq(f, a) == count_roots_in_fq(f, b)


def _ev(f, x):
    acc = x.ctx.zero
    for c in reversed(f):
        acc = acc * x + c
    return acc
