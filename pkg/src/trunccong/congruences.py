"""Polynomial congruences mod p for truncated sums of C(2k+e, k) and C(3k+e, k).

Every checker builds both sides as canonical polynomials over F_p and compares
them coefficient by coefficient.  Each one also evaluates its symbolic left side
at points of F_p and compares against the finite sum computed term by term with
scalar Lucas binomials, so the polynomial and numeric paths stay in agreement.

The ``*_lhs`` / ``*_rhs`` functions are looked up at call time, so a test can
substitute a perturbed side and watch the checker report the mismatch.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

import numpy as np

from .binom import binom_mod_lucas, binom_mod_lucas_array, lucas_table, shifted_binomials
from .modmath import BadParameter, PrimePower, ceil_div, exact_div, fib_mod, mod_inv
from .polyring import (
    DensePoly,
    _convolve_mod,
    lucas_poly,
    lucas_poly_beta,
    reduce_mod_cq_minus_c,
    subst_c_of_beta,
)
from .report import CongruenceReport, Verdict, elapsed_ms, skipped

DEFAULT_SYMQ = 4000
DEFAULT_POINTS = 25


@dataclass(frozen=True)
class CheckOptions:
    """Knobs shared by the symbolic checkers."""

    seed: int = 0
    points: int = DEFAULT_POINTS  # random evaluation points per tuple
    symq_cap: int = DEFAULT_SYMQ  # larger q is skipped, the work is O(q^2)

    def __post_init__(self):
        if self.points < 0 or self.symq_cap < 1:
            raise ValueError("points must be >= 0 and symq_cap >= 1")


def e_grid(q: int, extras=(), include_q: bool = False) -> list[int]:
    """Boundary shifts {0, 1, 2, 3, q//2, q-3, q-2, q-1} plus extras, clipped to range."""
    hi = q if include_q else q - 1
    grid = {0, 1, 2, 3, q // 2, q - 3, q - 2, q - 1} | set(extras)
    if include_q:
        grid.add(q)
    return sorted(e for e in grid if 0 <= e <= hi)


# polynomial building blocks


def _one_minus_c(p: int, k: int = 1) -> DensePoly:
    return DensePoly.linear(1, -1, p) ** k


def _two_plus_c(p: int) -> DensePoly:
    return DensePoly.linear(2, 1, p)


def _horner_sum(coeffs, lo: int, hi: int, shift: int, step: DensePoly, p: int) -> DensePoly:
    """sum_{lo<=k<hi} coeffs[k-lo] * u^(shift*k) * step^(hi-1-k)."""
    acc = np.zeros(0, dtype=np.int64)
    kernel = step.coeffs
    for k in range(lo, hi):
        if len(acc):
            acc = _convolve_mod(acc, kernel, p)
        t = int(coeffs[k - lo]) % p
        if t:
            idx = shift * k
            if len(acc) <= idx:
                acc = np.concatenate([acc, np.zeros(idx + 1 - len(acc), dtype=np.int64)])
            acc[idx] = (acc[idx] + t) % p
    return DensePoly(acc, p)


def _in_s_squared(f: DensePoly) -> DensePoly:
    """f(u) with u = s^2."""
    if f.is_zero():
        return f
    out = np.zeros(2 * len(f.coeffs) - 1, dtype=np.int64)
    out[::2] = f.coeffs
    return DensePoly(out, f.p)


def _ternary_weighted_sum(e: int, lo: int, hi: int, top: int, p: int) -> DensePoly:
    """sum_{lo<=k<hi} C(3k+e, k) c^(2k) (1-c)^(top-3k), needing top >= 3(hi-1)."""
    if hi <= lo:
        return DensePoly.zero(p)
    b = shifted_binomials(3, e, lo, hi, lucas_table(p))
    inner = _horner_sum(b, lo, hi, 2, _one_minus_c(p, 3), p)
    return inner * _one_minus_c(p, top - 3 * (hi - 1))


def _sample_points(p: int, count: int, rng: random.Random, exclude=()) -> list[int]:
    """``count`` distinct random points of F_p outside ``exclude``, or all of them if fewer."""
    bad = {x % p for x in exclude}
    if p - len(bad) <= count:
        return _all_points(p, exclude)
    out = set()
    while len(out) < count:
        t = rng.randrange(p)
        if t not in bad:
            out.add(t)
    return sorted(out)


def _all_points(p: int, exclude=()) -> list[int]:
    bad = {x % p for x in exclude}
    return [t for t in range(p) if t not in bad]


def _rng(theorem: str, params: dict, seed: int) -> random.Random:
    key = ",".join(f"{k}={params[k]}" for k in sorted(params))
    return random.Random(f"{theorem}|{key}|{seed}")


def _ternary_x(c0: int, p: int) -> int:
    """x = c^2/(1-c)^3 at a point c != 1."""
    return c0 * c0 % p * mod_inv(pow(1 - c0, 3, p), p) % p


def _direct_sum(r: int, e: int, lo: int, hi: int, x0: int, p: int) -> int:
    """sum_{lo<=k<hi} C(rk+e, k) x0^k mod p, one scalar Lucas evaluation per term."""
    table = lucas_table(p)
    acc, xp = 0, pow(x0, lo, p)
    for k in range(lo, hi):
        acc = (acc + binom_mod_lucas(r * k + e, k, p, table) * xp) % p
        xp = xp * x0 % p
    return acc


def _params(pp: PrimePower, **extra) -> dict:
    return {"p": pp.p, "n": pp.n, "q": pp.q, **extra}


def _too_big(theorem: str, pp: PrimePower, params: dict, opts: CheckOptions):
    if pp.q > opts.symq_cap:
        return skipped(theorem, params, f"q={pp.q} above symbolic cap {opts.symq_cap}")
    return None


# sums of C(2k+e, k)


def thm_2k_lhs(pp: PrimePower, e: int, m: int) -> DensePoly:
    """sum_{0<=k<(mq-e)/2} C(2k+e, k) c^k."""
    K = ceil_div(m * pp.q - e, 2)
    return DensePoly(shifted_binomials(2, e, 0, K, lucas_table(pp.p)), pp.p)


def thm_2k_rhs(pp: PrimePower, e: int, m: int) -> DensePoly:
    """h_N in c, N = mq - e."""
    return lucas_poly(m * pp.q - e, pp.p).h


def check_thm_2k(pp: PrimePower, e: int, m: int, opts: CheckOptions = CheckOptions()) -> CongruenceReport:
    pp.require_odd()
    q, p = pp.q, pp.p
    if m not in (1, 2):
        raise BadParameter(f"m must be 1 or 2, got {m}")
    if not 0 <= e <= q:
        raise BadParameter(f"need 0 <= e <= q, got e={e}, q={q}")
    params = _params(pp, e=e, m=m)
    if (skip := _too_big("thm3.2", pp, params, opts)) is not None:
        return skip
    start = time.perf_counter()
    v = Verdict()
    N = m * q - e
    lhs, rhs = thm_2k_lhs(pp, e, m), thm_2k_rhs(pp, e, m)
    v.polys(lhs, rhs, "c")
    # second route: everything in beta, the quotient by 1 - 2 beta taken exactly
    _, h_beta = lucas_poly_beta(N, p)
    v.polys(subst_c_of_beta(lhs), h_beta, "beta", "beta-route")
    v.polys(h_beta.reflect(), h_beta, "beta", "symmetry")
    rng = _rng("thm3.2", params, opts.seed)
    K = ceil_div(N, 2)
    for c0 in _sample_points(p, opts.points, rng):
        v.values(lhs(c0), _direct_sum(2, e, 0, K, c0, p), f"c={c0}")
    return v.report("thm3.2", params, elapsed_ms(start))


# sums of C(3k+e, k)


def thm_3k_lhs(pp: PrimePower, e: int, m: int) -> DensePoly:
    """2(2+c)(1-c)^(N-1) sum_{0<=k<N/3} C(3k+e, k) x^k with x = c^2/(1-c)^3, N = mq - e."""
    p = pp.p
    N = m * pp.q - e
    K = ceil_div(N, 3)
    return _ternary_weighted_sum(e, 0, K, N - 1, p) * _two_plus_c(p) * 2


def thm_3k_rhs(pp: PrimePower, e: int, m: int) -> DensePoly:
    """g_N + 3 h_N - 2(-c)^N."""
    p = pp.p
    N = m * pp.q - e
    L = lucas_poly(N, p)
    return L.g + L.h * 3 - DensePoly.monomial(N, p, 2 * (-1) ** N)


def thm_3k_rhs_beta(pp: PrimePower, e: int, m: int) -> DensePoly:
    """The same right side written in beta, alpha = 1 - beta, c = beta - beta^2."""
    p = pp.p
    N = m * pp.q - e
    g, h = lucas_poly_beta(N, p)
    minus_c = DensePoly([0, -1, 1], p)
    return g + h * 3 - (minus_c**N) * 2


def thm_3k_leading(pp: PrimePower, e: int, m: int) -> int:
    """Top coefficient of the left side, at c^(mq-e).  Only the k = 0 term reaches that degree,
    contributing 2 * c * (-c)^(N-1) * C(e, 0) = -2(-1)^N c^N, for every m."""
    N = m * pp.q - e
    return (-2 * (-1) ** N) % pp.p


def check_thm_3k(pp: PrimePower, e: int, m: int, opts: CheckOptions = CheckOptions()) -> CongruenceReport:
    pp.require_odd()
    q, p = pp.q, pp.p
    if m not in (1, 2, 3):
        raise BadParameter(f"m must be 1, 2 or 3, got {m}")
    if not 0 <= e < q:
        raise BadParameter(f"need 0 <= e < q, got e={e}, q={q}")
    params = _params(pp, e=e, m=m)
    if (skip := _too_big("thm3.4", pp, params, opts)) is not None:
        return skip
    start = time.perf_counter()
    v = Verdict()
    N = m * q - e
    lhs, rhs = thm_3k_lhs(pp, e, m), thm_3k_rhs(pp, e, m)
    v.polys(lhs, rhs, "c")
    if lhs.degree != N or lhs.lead != thm_3k_leading(pp, e, m):
        v.values(f"{lhs.lead}*c^{lhs.degree}", f"{thm_3k_leading(pp, e, m)}*c^{N}", "leading term")
    rhs_beta = thm_3k_rhs_beta(pp, e, m)
    v.polys(subst_c_of_beta(rhs), rhs_beta, "beta", "beta-route")
    v.polys(rhs_beta.reflect(), rhs_beta, "beta", "symmetry")
    rng = _rng("thm3.4", params, opts.seed)
    K = ceil_div(N, 3)
    for c0 in _sample_points(p, opts.points, rng, exclude=(1,)):
        direct = 2 * (2 + c0) * pow(1 - c0, N - 1, p) * _direct_sum(3, e, 0, K, _ternary_x(c0, p), p) % p
        v.values(lhs(c0), direct, f"c={c0}")
    return v.report("thm3.4", params, elapsed_ms(start))


def cor_3k_rhs(pp: PrimePower, m: int) -> DensePoly:
    """1 + 3(1-4c)^((q-1)/2) + 2c^q (m=1), or 1 + 3(1-4c)^((q-1)/2) - 2c^q - 2c^(2q) (m=2)."""
    p, q = pp.p, pp.q
    base = DensePoly.linear(1, -4, p) ** exact_div(q - 1, 2) * 3 + 1
    if m == 1:
        return base + DensePoly.monomial(q, p, 2)
    return base - DensePoly.monomial(q, p, 2) - DensePoly.monomial(2 * q, p, 2)


def check_cor_3k(pp: PrimePower, m: int, opts: CheckOptions = CheckOptions()) -> CongruenceReport:
    pp.require_odd()
    if m not in (1, 2):
        raise BadParameter(f"m must be 1 or 2, got {m}")
    p, q = pp.p, pp.q
    params = _params(pp, m=m)
    if (skip := _too_big("cor3.5", pp, params, opts)) is not None:
        return skip
    start = time.perf_counter()
    v = Verdict()
    lhs, rhs = thm_3k_lhs(pp, 0, m), cor_3k_rhs(pp, m)
    v.polys(lhs, rhs, "c")
    # the same right side in Lucas-polynomial form must reduce to the square-free form
    v.polys(thm_3k_rhs(pp, 0, m), rhs, "c", "lucas-form")
    K = ceil_div(m * q, 3)
    for c0 in _all_points(p, exclude=(1,)):
        direct = 2 * (2 + c0) * pow(1 - c0, m * q - 1, p) * _direct_sum(3, 0, 0, K, _ternary_x(c0, p), p) % p
        v.values(lhs(c0), direct, f"c={c0}")
    return v.report("cor3.5", params, elapsed_ms(start))


def range_relation_sides(pp: PrimePower) -> tuple[DensePoly, DensePoly]:
    """Short-range sum minus (1 - c^q) times the two-thirds-range sum, against
    c^q (2+c)^(q-1)/(1-c)^(q-1), all multiplied by 2(2+c)(1-c)^(2q-1)."""
    p, q = pp.p, pp.q
    L1, L2 = thm_3k_lhs(pp, 0, 1), thm_3k_lhs(pp, 0, 2)
    lhs = L1 * _one_minus_c(p, q) - L2 * (1 - DensePoly.monomial(q, p))
    rhs = DensePoly.monomial(q, p, 2) * _two_plus_c(p) ** q * _one_minus_c(p, q)
    return lhs, rhs


def check_range_relation(pp: PrimePower, opts: CheckOptions = CheckOptions()) -> CongruenceReport:
    pp.require_odd()
    p, q = pp.p, pp.q
    params = _params(pp)
    if (skip := _too_big("range-relation", pp, params, opts)) is not None:
        return skip
    start = time.perf_counter()
    v = Verdict()
    lhs, rhs = range_relation_sides(pp)
    v.polys(lhs, rhs, "c")
    K1, K2 = ceil_div(q, 3), ceil_div(2 * q, 3)
    for c0 in _all_points(p, exclude=(1,)):
        x0 = _ternary_x(c0, p)
        c0q = pow(c0, q, p)
        left = (_direct_sum(3, 0, 0, K1, x0, p) - (1 - c0q) * _direct_sum(3, 0, 0, K2, x0, p)) % p
        right = c0q * pow(2 + c0, q - 1, p) * mod_inv(pow(1 - c0, q - 1, p), p) % p
        v.values(left, right, f"c={c0}")
    return v.report("range-relation", params, elapsed_ms(start))


# the forms modulo c^q - c
#
# Neither side is a polynomial until the denominators (1-c)^(3k) are cleared.  Both
# sides are multiplied by (1-c)^D with D = 1 mod (q-1); modulo c^q - c that factor
# acts like 1 - c.  D = q suffices for the short range, D = 3q - 2 for the full one.


def zws_short_sides(pp: PrimePower) -> tuple[DensePoly, DensePoly]:
    p, q = pp.p, pp.q
    K = ceil_div(q, 3)
    lhs = _ternary_weighted_sum(0, 1, K, q, p) * _two_plus_c(p) * 2
    rhs = (DensePoly.linear(1, -4, p) ** exact_div(q - 1, 2) * 3 - 3) * _one_minus_c(p, q)
    return reduce_mod_cq_minus_c(lhs, q), reduce_mod_cq_minus_c(rhs, q)


def zws_full_sides(pp: PrimePower) -> tuple[DensePoly, DensePoly]:
    p, q = pp.p, pp.q
    D = 3 * q - 2
    lhs = _ternary_weighted_sum(0, 1, q, D + 1, p) * _two_plus_c(p) * 2
    rhs = (DensePoly.linear(1, -4, p) ** exact_div(q - 1, 2) * 3 - 3) * _one_minus_c(p, D)
    return reduce_mod_cq_minus_c(lhs, q), reduce_mod_cq_minus_c(rhs, q)


def check_zws(pp: PrimePower, opts: CheckOptions = CheckOptions()) -> CongruenceReport:
    pp.require_above_three()
    p, q = pp.p, pp.q
    params = _params(pp)
    if (skip := _too_big("zws", pp, params, opts)) is not None:
        return skip
    start = time.perf_counter()
    v = Verdict()
    short_l, short_r = zws_short_sides(pp)
    full_l, full_r = zws_full_sides(pp)
    v.polys(short_l, short_r, "c", "short")
    v.polys(full_l, full_r, "c", "full")
    half = exact_div(q - 1, 2)
    K = ceil_div(q, 3)
    for c0 in _all_points(p, exclude=(1,)):
        x0 = _ternary_x(c0, p)
        target = (-3 + 3 * pow(1 - 4 * c0, half, p)) % p
        s_short = _direct_sum(3, 0, 1, K, x0, p)
        s_full = _direct_sum(3, 0, 1, q, x0, p)
        v.values(2 * (2 + c0) * s_short % p, target, f"short c={c0}")
        v.values(2 * (2 + c0) * (1 - c0) * s_full % p, target, f"full c={c0}")
        # the cleared polynomials at c0 against the cleared direct sums
        v.values(short_l(c0), 2 * (2 + c0) * pow(1 - c0, q, p) * s_short % p, f"short poly c={c0}")
        v.values(full_l(c0), 2 * (2 + c0) * pow(1 - c0, 3 * q - 1, p) * s_full % p, f"full poly c={c0}")
    return v.report("zws", params, elapsed_ms(start))


# the Cardano parametrization x = 4 s^2 / (27 (s^2 - 1))


@dataclass(frozen=True)
class CardanoExponents:
    eps: int
    sigma: int  # largest integer below q/3
    tau: int  # largest integer below 2q/3
    short: int  # (2q + eps)/3
    long: int  # (q - eps)/3

    @classmethod
    def for_q(cls, pp: PrimePower) -> "CardanoExponents":
        pp.require_above_three()
        q, eps = pp.q, pp.epsilon
        sigma = exact_div(2 * q - 3 + eps, 6)
        return cls(eps, sigma, q - 1 - sigma, exact_div(2 * q + eps, 3), exact_div(q - eps, 3))


def _cardano_sum(p: int, lo: int, hi: int, top: int, scale: int) -> DensePoly:
    """scale * sum_{lo<=k<hi} C(3k, k) (-4 s^2/27)^k (1 - s^2)^(top - k)."""
    if hi <= lo:
        return DensePoly.zero(p)
    w = -4 * mod_inv(27, p) % p
    b = shifted_binomials(3, 0, lo, hi, lucas_table(p))
    wk = np.array([pow(w, k, p) for k in range(lo, hi)], dtype=np.int64)
    inner = _horner_sum(b * wk % p, lo, hi, 1, DensePoly.linear(1, -1, p), p)
    in_u = inner * DensePoly.linear(1, -1, p) ** (top - (hi - 1))
    return _in_s_squared(in_u) * scale


def cardano_sides(pp: PrimePower) -> list[tuple[str, DensePoly, DensePoly]]:
    """(label, lhs, rhs) for the short range, the two-thirds range and the middle range
    (the last multiplied through by s^q)."""
    p, q = pp.p, pp.q
    ex = CardanoExponents.for_q(pp)
    plus, minus = DensePoly.linear(1, 1, p), DensePoly.linear(1, -1, p)
    third = mod_inv(3, p)
    sq = DensePoly.monomial(q, p)
    K1, K2 = ceil_div(q, 3), ceil_div(2 * q, 3)
    lhs1 = _cardano_sum(p, 0, K1, ex.sigma, 2)
    rhs1 = plus**ex.short + minus**ex.short
    lhs2 = _cardano_sum(p, 0, K2, ex.tau, 2)
    rhs2 = plus**ex.long * (1 - sq * third) + minus**ex.long * (1 + sq * third)
    lhs3 = _cardano_sum(p, q // 2 + 1, K2, ex.tau, 3)
    rhs3 = (plus**ex.long - minus**ex.long) * sq
    return [("short", lhs1, rhs1), ("two-thirds", lhs2, rhs2), ("middle", lhs3, rhs3)]


def check_cardano(pp: PrimePower, opts: CheckOptions = CheckOptions()) -> CongruenceReport:
    pp.require_above_three()
    p, q = pp.p, pp.q
    params = _params(pp)
    if (skip := _too_big("thm6.2", pp, params, opts)) is not None:
        return skip
    start = time.perf_counter()
    v = Verdict()
    sides = cardano_sides(pp)
    for label, lhs, rhs in sides:
        v.polys(lhs, rhs, "s", label)
    ex = CardanoExponents.for_q(pp)
    params["eps"] = ex.eps
    rng = _rng("thm6.2", params, opts.seed)
    (_, l1, _), (_, l2, _), (_, l3, _) = sides
    K1, K2 = ceil_div(q, 3), ceil_div(2 * q, 3)
    for s0 in _sample_points(p, opts.points, rng, exclude=(0, 1, -1)):
        u = s0 * s0 % p
        x0 = 4 * u * mod_inv(27 * (u - 1), p) % p
        v.values(l1(s0), 2 * pow(1 - u, ex.sigma, p) * _direct_sum(3, 0, 0, K1, x0, p) % p, f"short s={s0}")
        v.values(l2(s0), 2 * pow(1 - u, ex.tau, p) * _direct_sum(3, 0, 0, K2, x0, p) % p, f"two-thirds s={s0}")
        mid = _direct_sum(3, 0, q // 2 + 1, K2, x0, p)
        v.values(l3(s0), 3 * pow(1 - u, ex.tau, p) * mid % p, f"middle s={s0}")
    return v.report("thm6.2", params, elapsed_ms(start))


# p = 2


def no_adjacent_ones(k: np.ndarray) -> np.ndarray:
    return (k & (k >> 1)) == 0


def check_p2_fibonacci(r_max: int = 20) -> CongruenceReport:
    """Parity of sum_{0<=k<2^r} C(3k, k) against F_(r+2), for r <= r_max."""
    if not 0 <= r_max <= 20:
        raise BadParameter("r_max must lie in 0..20")
    start = time.perf_counter()
    v = Verdict()
    k = np.arange(1 << r_max, dtype=np.int64)
    odd_digits = no_adjacent_ones(k).astype(np.int64)
    odd_lucas = binom_mod_lucas_array(3 * k, k, lucas_table(2))
    for r in range(r_max + 1):
        n = 1 << r
        target = fib_mod(r + 2, 2)
        v.values(int(odd_lucas[:n].sum()) % 2, target, f"r={r} (Lucas)")
        v.values(int(odd_digits[:n].sum()) % 2, target, f"r={r} (digits)")
    return v.report("p2-fib", {"p": 2, "r_max": r_max}, elapsed_ms(start))

