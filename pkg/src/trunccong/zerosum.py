"""Numeric evaluation of truncated sums sum_k C(3k, k) a^k over finite fields, and the
applications built on them: the vanishing criterion via the splitting cubic
a(1-z)^3 - z^2, special values of a, and closed forms at particular x.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .binom import binom_mod_lucas, binom_mod_lucas_array, iter_shifted_binomials, lucas_table
from .gfq import FqContext, FqElement, NotPresent, build_field, count_roots_in_fq, find_special_element
from .modmath import BadParameter, PrimePower, ceil_div, epsilon, exact_div, fib_mod, mod_inv, odd_primes
from .polyring import DensePoly, poly_gcd, powmod
from .report import CongruenceReport, Verdict, Witness, elapsed_ms, skipped

DEFAULT_BUDGET_TERMS = 30_000_000
DEFAULT_SCAN_Q = 25_000
RANGE_KINDS = ("short", "full", "mid", "two-thirds")


class BudgetExceeded(RuntimeError):
    pass


class DegenerateDiscriminant(ValueError):
    """a(1-z)^3 - z^2 has a repeated root (a = 0 or a = 4/27)."""


class ExcludedPrime(ValueError):
    pass


@dataclass(frozen=True)
class SumSpec:
    """sum over a range of k of C(3k, k) a^k, with the range governed by q.

    short: 0 < k < q/3, full: 0 < k < q, mid: q/2 < k < 2q/3, two-thirds: 0 < k < 2q/3.
    ``with_k0`` adds the k = 0 term (all but mid).  ``a`` lives in whatever field is smallest
    containing it, which may be much smaller than F_q.
    """

    kind: str
    a: FqElement
    q: int
    with_k0: bool = False

    def __post_init__(self):
        if self.kind not in RANGE_KINDS:
            raise BadParameter(f"unknown range {self.kind!r}")
        if self.with_k0 and self.kind == "mid":
            raise BadParameter("the middle range never contains k = 0")
        p = self.a.ctx.p
        if self.q < p or self.q % p:
            raise BadParameter(f"q={self.q} is not a power of p={p}")

    def bounds(self) -> tuple[int, int]:
        q = self.q
        if self.kind == "short":
            lo, hi = 1, ceil_div(q, 3)
        elif self.kind == "full":
            lo, hi = 1, q
        elif self.kind == "two-thirds":
            lo, hi = 1, ceil_div(2 * q, 3)
        else:
            lo, hi = q // 2 + 1, ceil_div(2 * q, 3)
        return (0 if self.with_k0 else lo), hi


def _prime_powers(a: int, n: int, p: int) -> np.ndarray:
    """a^0 .. a^(n-1) mod p by doubling."""
    out = np.ones(max(n, 1), dtype=np.int64)
    if n > 1:
        out[1] = a % p
    filled, step = min(n, 2), a * a % p
    while filled < n:
        take = min(filled, n - filled)
        out[filled : filled + take] = out[:take] * step % p
        filled += take
        step = step * step % p
    return out[:n]


def _multiplicative_order(a: FqElement, limit: int) -> list[FqElement]:
    """[a^0, a^1, ..., a^(ord-1)], refusing to go past ``limit`` elements."""
    powers = [a.ctx.one]
    x = a
    while x != a.ctx.one:
        powers.append(x)
        if len(powers) > limit:
            raise BudgetExceeded(f"order of {a} exceeds {limit}")
        x = x * a
    return powers


def eval_sum(spec: SumSpec, budget_terms: int = DEFAULT_BUDGET_TERMS, chunk: int = 1 << 16) -> FqElement:
    """Streaming evaluation of the sum described by ``spec``."""
    lo, hi = spec.bounds()
    return eval_range(spec.a, lo, hi, 0, budget_terms, chunk)


def eval_range(
    a: FqElement,
    lo: int,
    hi: int,
    e: int = 0,
    budget_terms: int = DEFAULT_BUDGET_TERMS,
    chunk: int = 1 << 16,
    r: int = 3,
) -> FqElement:
    """sum_{lo<=k<hi} C(rk+e, k) a^k, with Lucas binomials in vectorized chunks.

    For a in F_p the powers come from a precomputed chunk table; otherwise the
    binomials are bucketed by k mod ord(a) and combined with the powers of a at the
    end, which keeps every step in integer arithmetic mod p.
    """
    ctx = a.ctx
    p = ctx.p
    if hi - lo > budget_terms:
        raise BudgetExceeded(f"{hi - lo} terms exceed the budget of {budget_terms}")
    if hi <= lo:
        return ctx.zero
    if a.is_zero():
        return ctx(binom_mod_lucas(e, 0, p)) if lo == 0 else ctx.zero
    table = lucas_table(p)
    if ctx.n == 1:
        a0 = int(a)
        step_table = _prime_powers(a0, min(chunk, hi - lo), p)
        total = 0
        for start, vals in iter_shifted_binomials(r, e, lo, hi, table, chunk):
            scale = pow(a0, start, p)
            pw = step_table[: len(vals)] * scale % p
            total = (total + int((vals * pw % p).sum())) % p
        return ctx(total)
    powers = _multiplicative_order(a, budget_terms)
    period = len(powers)
    buckets = np.zeros(period, dtype=np.int64)
    for start, vals in iter_shifted_binomials(r, e, lo, hi, table, chunk):
        np.add.at(buckets, np.arange(start, start + len(vals)) % period, vals)
        buckets %= p
    coords = ctx.to_array(powers)
    return ctx(tuple(int(c) for c in (buckets[:, None] * coords % p).sum(axis=0) % p))


def eval_sum_naive(spec: SumSpec) -> FqElement:
    """Reference evaluation: one scalar Lucas binomial and one field multiplication per term."""
    lo, hi = spec.bounds()
    ctx = spec.a.ctx
    table = lucas_table(ctx.p)
    acc, power = ctx.zero, spec.a**lo
    for k in range(lo, hi):
        acc = acc + power * binom_mod_lucas(3 * k, k, ctx.p, table)
        power = power * spec.a
    return acc


def class_sum(q: int, p: int, d: int, j: int, hi: int, budget_terms: int = DEFAULT_BUDGET_TERMS) -> int:
    """sum of C(3k, k) mod p over 0 < k < hi with k = j mod d."""
    first = j % d or d
    count = len(range(first, hi, d))
    if count > budget_terms:
        raise BudgetExceeded(f"{count} terms exceed the budget of {budget_terms}")
    table = lucas_table(p)
    total = 0
    span = d << 16
    for start in range(first, hi, span):
        k = np.arange(start, min(hi, start + span), d, dtype=np.int64)
        total = (total + int(binom_mod_lucas_array(3 * k, k, table).sum())) % p
    return total


# the splitting cubic


def splitting_cubic(a: FqElement) -> list[FqElement]:
    """a(1-z)^3 - z^2 in ascending coefficients."""
    return [a, a * -3, a * 3 - 1, -a]


def _check_discriminant(a: FqElement):
    if a.is_zero() or (a * 27 - 4).is_zero():
        raise DegenerateDiscriminant(f"a={a} makes a(4 - 27a) vanish")


def cubic_splits(a: FqElement, ctx: FqContext | None = None, q: int | None = None) -> bool:
    """Whether a(1-z)^3 - z^2 has three roots in F_q (default: the field of a).

    A larger q is allowed when a lies in F_p; the count is then
    deg gcd(z^q - z, f) computed over F_p.
    """
    ctx = ctx or a.ctx
    _check_discriminant(a)
    q = q or ctx.q
    if q == ctx.q:
        return count_roots_in_fq(splitting_cubic(a), ctx) == 3
    if not a.in_prime_field():
        raise BadParameter("a larger target field needs a in F_p")
    return roots_over_prime_extension(int(a), ctx.p, q) == 3


def roots_over_prime_extension(a: int, p: int, q: int) -> int:
    """Distinct roots in F_q of a(1-z)^3 - z^2 with a in F_p."""
    f = DensePoly([a, -3 * a, 3 * a - 1, -a], p)
    z = DensePoly.monomial(1, p)
    return poly_gcd(powmod(z, q, f) - z, f).degree


def root_count_table(ctx: FqContext) -> dict:
    """For every a, the number of c in F_q with a(1-c)^3 = c^2, by tabulating c^2/(1-c)^3."""
    counts: dict = {}
    for c in ctx.elements():
        if c == 1:
            continue
        a = c * c / (1 - c) ** 3
        counts[a] = counts.get(a, 0) + 1
    return counts


def _excluded_values(ctx: FqContext):
    return {ctx.zero, ctx(Fraction(1, 9)), ctx(Fraction(4, 27))}


def check_thm_zero(
    ctx: FqContext,
    budget_terms: int = DEFAULT_BUDGET_TERMS,
    scan_q: int = DEFAULT_SCAN_Q,
) -> CongruenceReport:
    """For every a in F_q outside {0, 1/9, 4/27}: the short sum vanishes iff the cubic splits.

    Root counts are taken two ways (gcd with z^q - z, and a full tabulation of
    c -> c^2/(1-c)^3), and for q = 2, 7 mod 9 the excluded value a = 1/9 is checked
    to give a vanishing sum with no roots at all.
    """
    ctx.pp.require_above_three()
    q, p = ctx.q, ctx.p
    params = {"p": p, "n": ctx.n, "q": q}
    if q > scan_q:
        return skipped("thm-zero", params, f"q={q} above exhaustive cap {scan_q}")
    start = time.perf_counter()
    v = Verdict()
    excluded = _excluded_values(ctx)
    tabulated = root_count_table(ctx)
    zero_set = []
    for a in ctx.elements():
        s = eval_sum(SumSpec("short", a, q), budget_terms)
        if a in excluded:
            continue
        roots = count_roots_in_fq(splitting_cubic(a), ctx)
        v.values(roots, tabulated.get(a, 0), f"root count a={a}")
        if s.is_zero():
            zero_set.append(a)
        if s.is_zero() != (roots == 3):
            v.fail(Witness("point", f"a={a}", f"sum={s}", f"roots={roots}"))
    ninth = ctx(Fraction(1, 9))
    if q % 9 in (2, 7):
        s = eval_sum(SumSpec("short", ninth, q), budget_terms)
        roots = count_roots_in_fq(splitting_cubic(ninth), ctx)
        if not (s.is_zero() and roots == 0):
            v.fail(Witness("point", "a=1/9", f"sum={s},roots={roots}", "sum=0,roots=0"))
        shown = int(s) if s.in_prime_field() else s
        params["caveat_1/9"] = f"sum={shown},roots={roots}"
    params["zeros"] = len(zero_set)
    if ctx.n == 1:
        params["zero_set"] = sorted(int(a) for a in zero_set)
    return v.report("thm-zero", params, elapsed_ms(start))


def zero_set(ctx: FqContext, budget_terms: int = DEFAULT_BUDGET_TERMS) -> list[FqElement]:
    """The valid a (outside 0, 1/9, 4/27) with a vanishing short sum."""
    excluded = _excluded_values(ctx)
    return [
        a
        for a in ctx.elements()
        if a not in excluded and eval_sum(SumSpec("short", a, ctx.q), budget_terms).is_zero()
    ]


def check_short_full_linkage(pp: PrimePower, budget_terms: int = DEFAULT_BUDGET_TERMS) -> CongruenceReport:
    """At every c in F_p other than 1, with x = c^2/(1-c)^3, the sums over k < q/3 and
    k < q (k = 0 included) satisfy S_short - (1 - c^q) S_full = c^q (2+c)^(q-1)/(1-c)^(q-1),
    and either sum without its k = 0 term vanishes iff the other does."""
    pp.require_above_three()
    p, q = pp.p, pp.q
    ctx = prime_field(p)
    start = time.perf_counter()
    v = Verdict()
    for c0 in range(p):
        if c0 == 1:
            continue
        x = ctx(c0 * c0 * mod_inv(pow(1 - c0, 3, p), p))
        short = eval_sum(SumSpec("short", x, q), budget_terms)
        full = eval_sum(SumSpec("full", x, q), budget_terms)
        cq = pow(c0, q, p)
        left = (1 + short) - (1 + full) * (1 - cq)
        right = cq * pow(2 + c0, q - 1, p) * mod_inv(pow(1 - c0, q - 1, p), p)
        v.values(left, ctx(right), f"relation c={c0}")
        v.values(short.is_zero(), full.is_zero(), f"vanishing c={c0}")
    return v.report("zws-linkage", {"p": p, "n": pp.n, "q": q}, elapsed_ms(start))


# special values of a


SPECIAL_CASES = ("a=1", "a=-1", "a=i", "a=omega", "m-family", "6h", "9h", "12h")

# primes excluded for each value of a, where a coincides with 4/27 or similar
EXCLUDED = {
    "a=1": {23},
    "a=-1": {31},
    "a=i": {5, 149},
    "a=omega": {23, 853},
    "6h": {23, 31},
    "12h": {5, 23, 31, 149},
    "9h": {23, 853},
}

DEFAULT_SPECIAL = {
    "a=1": [5, 7, 11, 13],
    "a=-1": [5, 7, 11, 13],
    "a=i": [7, 13],
    "a=omega": [5, 7],
    "m-family": [(1, 5), (2, 7), (4, 11)],
    "6h": [5, 7, 11, 13],
    "9h": [5, 7],
    "12h": [7, 13],
}


def _root_of_unity(kind: str, p: int) -> tuple[FqElement, int]:
    """(element, degree of its field) for i or omega, in F_p when present, else F_p^2."""
    ctx = prime_field(p)
    try:
        return find_special_element(ctx, kind), 1
    except NotPresent:
        return find_special_element(_field2(p), kind), 2


@lru_cache(maxsize=256)
def _field2(p: int) -> FqContext:
    return build_field(p, 2)


@lru_cache(maxsize=2048)
def prime_field(p: int) -> FqContext:
    return FqContext(p)


def _exponent_for(kind: str, p: int) -> int:
    """q = p^6 when the value lies in F_p, p^12 when it needs F_p^2."""
    if kind == "a=i":
        return 6 if p % 4 == 1 else 12
    if kind in ("a=omega", "9h"):
        return 6 if p % 3 == 1 else 12
    if kind == "12h":
        return 6 if p % 4 == 1 else 12
    return 6


def _special_params(case: str, p: int, qexp: int, **extra) -> dict:
    return {"case": case, "p": p, "n": qexp, "q": p**qexp, **extra}


def special_value_scan(
    case: str,
    p_list=None,
    big: bool = False,
    budget_terms: int = DEFAULT_BUDGET_TERMS,
) -> list[CongruenceReport]:
    """Each case claims a vanishing truncated sum mod p; one report per prime."""
    if case not in SPECIAL_CASES:
        raise BadParameter(f"unknown special case {case!r}; choose from {SPECIAL_CASES}")
    items = DEFAULT_SPECIAL[case] if p_list is None else list(p_list)
    reports = []
    for item in items:
        if case == "m-family":
            m, p = item if isinstance(item, tuple) else (1, item)
            reports.append(_scan_m_family(m, p, budget_terms))
            continue
        p = item
        PrimePower(p).require_above_three()
        qexp = _exponent_for(case, p)
        params = _special_params(case, p, qexp)
        if p in EXCLUDED.get(case, ()):
            reports.append(skipped(f"special:{case}", params, f"p={p} excluded"))
            continue
        if qexp > 6 and not big:
            reports.append(skipped(f"special:{case}", params, "needs q = p^12; pass --big"))
            continue
        start = time.perf_counter()
        try:
            if case in ("6h", "9h", "12h"):
                v = _combined_case(case, p, qexp, params, budget_terms)
            else:
                v = _single_value_case(case, p, qexp, params, budget_terms)
        except BudgetExceeded as exc:
            reports.append(skipped(f"special:{case}", params, str(exc), elapsed_ms(start)))
            continue
        reports.append(v.report(f"special:{case}", params, elapsed_ms(start)))
    return reports


def _value_for(case: str, p: int) -> FqElement:
    if case == "a=1":
        return prime_field(p)(1)
    if case == "a=-1":
        return prime_field(p)(-1)
    if case == "a=i":
        return _root_of_unity("i", p)[0]
    return _root_of_unity("omega", p)[0]


def _single_value_case(case, p, qexp, params, budget_terms) -> Verdict:
    """Both square roots of -1 for a=i, both primitive cube roots of 1 for a=omega."""
    v = Verdict()
    q = p**qexp
    a = _value_for(case, p)
    values = [a]
    if case == "a=i":
        values.append(-a)
    elif case == "a=omega":
        values.append(a * a)
    ninth = a.ctx(Fraction(1, 9))
    if any(x == ninth for x in values):
        # only the splitting => vanishing direction is used, which does not need a != 1/9
        params["coincides_with_1/9"] = True
    for x in values:
        if x.ctx.n == 1:
            splits = roots_over_prime_extension(int(x), p, q) == 3
            v.values(splits, True, f"cubic splits over F_q a={x}")
        s = eval_sum(SumSpec("short", x, q), budget_terms)
        v.values(s, 0, f"sum a={x}")
    return v


def _combined_case(case, p, qexp, params, budget_terms) -> Verdict:
    """Direct sums over the relevant residue class of k, and the same sums assembled
    from the plain sums at the roots of unity of that order."""
    v = Verdict()
    q = p**qexp
    hi = ceil_div(q, 3)
    ctx = prime_field(p)
    if case == "6h":
        s_plus = eval_sum(SumSpec("short", ctx(1), q), budget_terms)
        s_minus = eval_sum(SumSpec("short", ctx(-1), q), budget_terms)
        even = class_sum(q, p, 2, 0, hi, budget_terms)
        odd = class_sum(q, p, 2, 1, hi, budget_terms)
        half = ctx(Fraction(1, 2))
        v.values(ctx(even), (s_plus + s_minus) * half, "even k from a=+-1")
        v.values(ctx(odd), (s_plus - s_minus) * half, "odd k from a=+-1")
        v.values(even, 0, "sum C(6h, 2h)")
        v.values(odd, 0, "sum C(6h-3, 2h-1)")
        return v
    d, kind = (4, "i") if case == "12h" else (3, "omega")
    root, _ = _root_of_unity(kind, p)
    total = root.ctx.zero
    for j in range(d):
        total = total + eval_sum(SumSpec("short", root**j, q), budget_terms)
    total = total / d
    v.values(total.in_prime_field(), True, "assembled sum fixed by Frobenius")
    direct = class_sum(q, p, d, 0, hi, budget_terms)
    v.values(total, root.ctx(direct), f"k = 0 mod {d} from roots of unity")
    v.values(direct, 0, "sum C(12h, 4h)" if d == 4 else "sum C(9h, 3h)")
    return v


def m_family_value(m: int) -> Fraction:
    """a = 4/(27 + m^2); then a(4 - 27a) = (am)^2."""
    return Fraction(4, 27 + m * m)


def _scan_m_family(m: int, p: int, budget_terms: int) -> CongruenceReport:
    q = p**3
    params = _special_params("m-family", p, 3, m=m)
    start = time.perf_counter()
    a_frac = m_family_value(m)
    if (27 + m * m) % p == 0 or m % p == 0:
        return skipped("special:m-family", params, "a not p-integral or discriminant zero")
    v = Verdict()
    ctx = prime_field(p)
    a = ctx(a_frac)
    params["a"] = int(a)
    v.values(a * (4 - a * 27), (a * m) ** 2, "discriminant is (am)^2")
    params["splits"] = roots_over_prime_extension(int(a), p, q) == 3
    v.values(params["splits"], True, "cubic splits over F_q")
    try:
        s = eval_sum(SumSpec("short", a, q), budget_terms)
    except BudgetExceeded as exc:
        return skipped("special:m-family", params, str(exc), elapsed_ms(start))
    v.values(s, 0, f"sum a={a}")
    return v.report("special:m-family", params, elapsed_ms(start))


# closed forms at particular x


def _fib_third(n: int, p: int) -> int:
    return fib_mod(n, p) * mod_inv(3, p) % p


def numeric_identities(pp: PrimePower) -> list[tuple[str, SumSpec, int]]:
    """(label, sum, claimed value mod p) for the closed forms at x = 1/6, 1/9, -1/27, 1/3
    and 4/27, all with a in F_p and ranges governed by q."""
    pp.require_above_three()
    p, q = pp.p, pp.q
    ctx = prime_field(p)
    eps = epsilon(pp)
    x = lambda fr: ctx(Fraction(fr))  # noqa: E731
    out = []
    if eps == -1:
        sixth_short = pow(2, exact_div(2 * q - 1, 3), p) - pow(2, exact_div(q + 1, 3), p)
        sixth_full = -pow(2, exact_div(q - 2, 3), p)
    else:
        sixth_short = pow(2, exact_div(q + 2, 3), p) - pow(2, exact_div(2 * q - 2, 3), p)
        sixth_full = pow(2, exact_div(q - 1, 3), p)
    out.append(("x=1/6 short", SumSpec("short", x("1/6"), q, True), sixth_short % p))
    out.append(("x=1/6 full", SumSpec("full", x("1/6"), q, True), sixth_full % p))
    b = q % 9
    ninth_short = {1: 1, 8: 1, 2: 1, 7: 1, 4: -2, 5: -2}[b]
    ninth_full = {1: 1, 8: 1, 2: 0, 7: 0, 4: -1, 5: -1}[b]
    out.append(("x=1/9 short", SumSpec("short", x("1/9"), q, True), ninth_short % p))
    out.append(("x=1/9 full", SumSpec("full", x("1/9"), q, True), ninth_full % p))
    out.append(("x=-1/27 short", SumSpec("short", x("-1/27"), q, True), fib_mod(exact_div(2 * q + eps, 3), p)))
    out.append(("x=-1/27 mid", SumSpec("mid", x("-1/27"), q), _fib_third(exact_div(q - eps, 3), p)))
    out.append(("x=1/3 short", SumSpec("short", x("1/3"), q, True), eps * fib_mod(2 * exact_div(2 * q + eps, 3), p) % p))
    out.append(("x=1/3 mid", SumSpec("mid", x("1/3"), q), eps * fib_mod(2 * exact_div(q - eps, 3), p) % p))
    out.append(("x=4/27 short", SumSpec("short", x("4/27"), q), int(ctx(Fraction(-2, 3)))))
    out.append(("x=4/27 full", SumSpec("full", x("4/27"), q), int(ctx(Fraction(-8, 9)))))
    return out


def numeric_suite(
    p_max: int = 10_000,
    q2_pmax: int = 31,
    budget_terms: int = DEFAULT_BUDGET_TERMS,
) -> list[CongruenceReport]:
    """One report per closed form and exponent, aggregated over 3 < p <= p_max (q = p)
    and 3 < p <= q2_pmax (q = p^2)."""
    reports = []
    for n, bound in ((1, p_max), (2, min(q2_pmax, p_max))):
        primes = odd_primes(5, bound + 1)
        if not primes:
            continue
        verdicts: dict[str, Verdict] = {}
        start = time.perf_counter()
        for p in primes:
            for label, spec, claim in numeric_identities(PrimePower(p, n)):
                v = verdicts.setdefault(label, Verdict())
                v.values(eval_sum(spec, budget_terms), spec.a.ctx(claim), f"p={p}")
        ms = elapsed_ms(start)
        for label, v in verdicts.items():
            params = {"x": label.split()[0][2:], "range": label.split()[1], "n": n, "p_max": bound, "primes": len(primes)}
            reports.append(v.report("numeric", params, ms))
    return reports


TAIL_VALUES = {
    # x : (s^2 as a fraction, how to build s)
    "-16/27": "2/sqrt5",
    "1/3": "3/sqrt5",
    "1/27": "i/sqrt3",
    "2/27": "i",
}


def _tail_s(which: str, ctx: FqContext) -> FqElement:
    if which == "2/sqrt5":
        return ctx(2) / find_special_element(ctx, "sqrt", 5)
    if which == "3/sqrt5":
        return ctx(3) / find_special_element(ctx, "sqrt", 5)
    if which == "i/sqrt3":
        return find_special_element(ctx, "i") / find_special_element(ctx, "sqrt", 3)
    return find_special_element(ctx, "i")


def tail_checks(p: int, x_label: str, budget_terms: int = DEFAULT_BUDGET_TERMS) -> Verdict:
    """Evaluate the three congruences in s at the given s inside F_p^2 and compare with the sums at x."""
    pp = PrimePower(p)
    pp.require_above_three()
    q = p
    v = Verdict()
    big = _field2(p)
    s = _tail_s(TAIL_VALUES[x_label], big)
    x = prime_field(p)(Fraction(x_label))
    u = s * s
    v.values(u * 4 / ((u - 1) * 27), big(int(x)), f"x(s) p={p}")
    eps = epsilon(pp)
    sigma = exact_div(2 * q - 3 + eps, 6)
    tau = q - 1 - sigma
    e_short, e_long = exact_div(2 * q + eps, 3), exact_div(q - eps, 3)
    third = big(Fraction(1, 3))
    sq = s**q
    short = eval_sum(SumSpec("short", x, q, True), budget_terms)
    two_thirds = eval_sum(SumSpec("two-thirds", x, q, True), budget_terms)
    mid = eval_sum(SumSpec("mid", x, q), budget_terms)
    lift = lambda t: big(int(t))  # noqa: E731
    rhs1 = (1 + s) ** e_short + (1 - s) ** e_short
    rhs2 = (1 + s) ** e_long * (1 - sq * third) + (1 - s) ** e_long * (1 + sq * third)
    rhs3 = ((1 + s) ** e_long - (1 - s) ** e_long) * sq
    v.values(rhs1.in_prime_field(), True, f"short rhs in F_p p={p}")
    v.values((1 - u) ** sigma * lift(short) * 2, rhs1, f"short p={p}")
    v.values((1 - u) ** tau * lift(two_thirds) * 2, rhs2, f"two-thirds p={p}")
    v.values((1 - u) ** tau * lift(mid) * 3, rhs3, f"middle p={p}")
    return v


def tail_suite(p_max: int = 500, budget_terms: int = DEFAULT_BUDGET_TERMS) -> list[CongruenceReport]:
    """One report per x, over all 3 < p <= p_max (q = p), skipping p = 5 where s needs sqrt(5)."""
    reports = []
    for x_label, how in TAIL_VALUES.items():
        start = time.perf_counter()
        v = Verdict()
        skipped_p = []
        primes = odd_primes(5, p_max + 1)
        for p in primes:
            if p == 5 and "sqrt5" in how:
                skipped_p.append(p)
                continue
            sub = tail_checks(p, x_label, budget_terms)
            if sub.witness:
                v.fail(sub.witness)
        params = {"x": x_label, "s": how, "p_max": p_max, "primes": len(primes) - len(skipped_p)}
        if skipped_p:
            params["skipped_primes"] = skipped_p
        reports.append(v.report("tail", params, elapsed_ms(start)))
    return reports
