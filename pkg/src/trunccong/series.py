"""Truncated power series with exact rational coefficients, and the closed-form
identities for sum_k C(rk+e, k) x^k that the congruence checkers rely on.

A series of order N knows its coefficients of x^0 .. x^(N-1); every binary
operation truncates to the smaller order of its operands.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .report import CongruenceReport, Verdict, Witness, elapsed_ms

DEFAULT_ORDER = 40


class NonUnitConstant(ValueError):
    """Constant term is not invertible (or not 1 for a fractional power)."""


class NonzeroInnerConstant(ValueError):
    """Composition needs an inner series without constant term."""


def _common_denominator(coeffs) -> tuple[list[int], int]:
    den = 1
    for c in coeffs:
        den = math.lcm(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


@dataclass(frozen=True)
class RationalSeries:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs order >= 1")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    # constructors

    @classmethod
    def from_coeffs(cls, coeffs, order: int) -> "RationalSeries":
        out = [Fraction(c) for c in list(coeffs)[:order]]
        out += [Fraction(0)] * (order - len(out))
        return cls(tuple(out))

    @classmethod
    def const(cls, a, order: int) -> "RationalSeries":
        return cls.from_coeffs([a], order)

    @classmethod
    def var(cls, order: int) -> "RationalSeries":
        return cls.from_coeffs([0, 1], order)

    # arithmetic

    def _lift(self, other) -> "RationalSeries":
        if isinstance(other, RationalSeries):
            return other
        return RationalSeries.const(other, self.order)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __add__(self, other):
        other = self._lift(other)
        n = min(self.order, other.order)
        return RationalSeries(tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))

    __radd__ = __add__

    def __neg__(self):
        return RationalSeries(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, RationalSeries):
            f = Fraction(other)
            return RationalSeries(tuple(a * f for a in self.coeffs))
        n = min(self.order, other.order)
        na, da = _common_denominator(self.coeffs[:n])
        nb, db = _common_denominator(other.coeffs[:n])
        a_terms = [(i, a) for i, a in enumerate(na) if a]
        b_terms = [(j, b) for j, b in enumerate(nb) if b]
        acc = [0] * n
        for i, a in a_terms:
            for j, b in b_terms:
                if i + j >= n:
                    break
                acc[i + j] += a * b
        den = da * db
        return RationalSeries(tuple(Fraction(v, den) for v in acc))

    __rmul__ = __mul__

    def inverse(self) -> "RationalSeries":
        return series_inv(self)

    def __truediv__(self, other):
        if isinstance(other, RationalSeries):
            return self * series_inv(other)
        return self * (1 / Fraction(other))

    def __rtruediv__(self, other):
        return series_inv(self) * Fraction(other)

    def __pow__(self, k: int):
        if k < 0:
            return series_inv(self) ** (-k)
        result = RationalSeries.const(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def compose(self, inner: "RationalSeries") -> "RationalSeries":
        return series_compose(self, inner)

    def divide_by_var(self) -> "RationalSeries":
        """self / x, dropping one order; the constant term must vanish."""
        if self.coeffs[0]:
            raise NonUnitConstant("constant term must vanish to divide by the variable")
        return RationalSeries(self.coeffs[1:])

    def truncate(self, order: int) -> "RationalSeries":
        return RationalSeries(self.coeffs[:order])

    def first_mismatch(self, other) -> int | None:
        other = self._lift(other)
        n = min(self.order, other.order)
        for k in range(n):
            if self.coeffs[k] != other.coeffs[k]:
                return k
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def series_mul(f: RationalSeries, g: RationalSeries) -> RationalSeries:
    return f * g


def series_inv(f: RationalSeries) -> RationalSeries:
    f0 = f.coeffs[0]
    if f0 == 0:
        raise NonUnitConstant("series with zero constant term is not invertible")
    n = f.order
    inv0 = 1 / f0
    g = [inv0]
    fc = f.coeffs
    for k in range(1, n):
        s = sum(fc[j] * g[k - j] for j in range(1, k + 1) if fc[j])
        g.append(-s * inv0)
    return RationalSeries(tuple(g))


def series_compose(f: RationalSeries, g: RationalSeries) -> RationalSeries:
    """f(g) by Horner's rule; g must have zero constant term."""
    if g.coeffs[0]:
        raise NonzeroInnerConstant("inner series must have zero constant term")
    n = min(f.order, g.order)
    g = g.truncate(n)
    acc = RationalSeries.const(f.coeffs[n - 1], n)
    for k in range(n - 2, -1, -1):
        acc = acc * g + f.coeffs[k]
    return acc


def binomial_series(a, order: int) -> RationalSeries:
    """(1 + t)^a = sum_k C(a, k) t^k for rational a."""
    a = Fraction(a)
    out = [Fraction(1)]
    for k in range(1, order):
        out.append(out[-1] * (a - k + 1) / k)
    return RationalSeries(tuple(out))


def series_pow_rational(f: RationalSeries, a) -> RationalSeries:
    """f^a for rational a.  Fractional powers need constant term 1."""
    a = Fraction(a)
    if a.denominator == 1:
        return f ** int(a)
    if f.coeffs[0] != 1:
        raise NonUnitConstant("fractional powers need constant term 1")
    return series_compose(binomial_series(a, f.order), f - 1)


# the generating functions


def series_Br(r: int, order: int) -> RationalSeries:
    """Generalized binomial series: sum_k C(rk, k)/((r-1)k + 1) x^k."""
    if r < 1 or order < 1:
        raise ValueError("need r >= 1 and order >= 1")
    return RationalSeries(tuple(Fraction(comb(r * k, k), (r - 1) * k + 1) for k in range(order)))


def series_y(r: int, e: int, order: int) -> RationalSeries:
    """sum_k C(rk + e, k) x^k."""
    if r < 1 or e < 0:
        raise ValueError("need r >= 1 and e >= 0")
    return RationalSeries(tuple(Fraction(comb(r * k + e, k)) for k in range(order)))


def fuss_catalan(r: int, e: int, order: int) -> RationalSeries:
    """sum_k e/(rk + e) C(rk + e, k) x^k, the claimed expansion of B_r^e (e > 0)."""
    return RationalSeries(tuple(Fraction(e * comb(r * k + e, k), r * k + e) for k in range(order)))


# identity checks


def _compare(verdict: Verdict, lhs: RationalSeries, rhs, var: str, label: str = "") -> None:
    rhs = lhs._lift(rhs)
    k = lhs.first_mismatch(rhs)
    if k is not None:
        prefix = f"{label} " if label else ""
        verdict.fail(Witness("coefficient", f"{prefix}{var}^{k}", str(lhs[k]), str(rhs[k])))


class _Oracle:
    """Collects one report per identity."""

    def __init__(self):
        self.reports: list[CongruenceReport] = []

    def run(self, name: str, params: dict, body):
        start = time.perf_counter()
        verdict = Verdict()
        body(verdict)
        self.reports.append(verdict.report(f"oracle:{name}", params, elapsed_ms(start)))


def c_substitution(r: int, order: int) -> RationalSeries:
    """x = -c^(r-1)/(c-1)^r as a series in c."""
    c = RationalSeries.var(order)
    return -(c ** (r - 1)) / ((c - 1) ** r)


def beta_substitution(order: int) -> RationalSeries:
    """c = beta(1 - beta)."""
    b = RationalSeries.var(order)
    return b * (1 - b)


def ternary_x_of_c(order: int) -> RationalSeries:
    """x = c^2/(1 - c)^3."""
    c = RationalSeries.var(order)
    return c * c / ((1 - c) ** 3)


def check_section2_identities(r_max: int = 5, e_max: int = 4, order: int = DEFAULT_ORDER) -> list[CongruenceReport]:
    """Verify the closed forms around sum_k C(rk+e, k) x^k as exact series identities."""
    if order < 8:
        raise ValueError("order must be at least 8")
    N = order
    oracle = _Oracle()
    x = RationalSeries.var(N)

    for r in range(1, r_max + 1):
        B = series_Br(r, N)
        params = {"r": r, "order": N}

        def two_forms(v, r=r, B=B):
            alt = RationalSeries(tuple(Fraction(comb(r * k + 1, k), r * k + 1) for k in range(N)))
            _compare(v, B, alt, "x")

        oracle.run("binomial-series-forms", params, two_forms)
        oracle.run("functional-equation", params, lambda v, r=r, B=B: _compare(v, B, 1 + x * B**r, "x"))

        def algebraic(v, r=r):
            y = series_y(r, 0, N)
            residual = (y - 1) * ((r - 1) * y + 1) ** (r - 1) - (r**r) * x * y**r
            _compare(v, residual, 0, "x")

        oracle.run("algebraic-equation", params, algebraic)

        def reciprocal(v, r=r, B=B):
            w = series_inv(B)
            _compare(v, w**r - w ** (r - 1) + x, 0, "x")

        oracle.run("reciprocal-equation", params, reciprocal)

        if r >= 2:
            oracle.run("degree-reduction", params, lambda v, r=r, B=B: _degree_reduction(v, r, B, N))

        for e in range(0, e_max + 1):
            params_e = {"r": r, "e": e, "order": N}
            if e > 0:

                def fuss(v, r=r, e=e, B=B):
                    fc = fuss_catalan(r, e, N)
                    for k, val in enumerate(fc.coeffs):
                        if val.denominator != 1:
                            v.fail(Witness("coefficient", f"integrality x^{k}", str(val), "integer"))
                    _compare(v, B**e, fc, "x")

                oracle.run("fuss-catalan-power", params_e, fuss)

            def shifted(v, r=r, e=e, B=B):
                lhs = B**e / (1 - r + r * series_inv(B))
                _compare(v, lhs, series_y(r, e, N), "x")

            oracle.run("shifted-series", params_e, shifted)

    if r_max >= 2:
        for e in range(0, e_max + 1):
            oracle.run("binary-closed-form", {"e": e, "order": N}, lambda v, e=e: _binary_closed_form(v, e, N))
            oracle.run("binary-sqrt-form", {"e": e, "order": N}, lambda v, e=e: _binary_sqrt_form(v, e, N))
            oracle.run("binary-beta-form", {"e": e, "order": N}, lambda v, e=e: _binary_beta_form(v, e, N))
    if r_max >= 3:
        oracle.run("ternary-closed-form", {"order": N}, lambda v: _ternary_closed_form(v, N))
        for e in range(0, e_max + 1):
            oracle.run("ternary-beta-form", {"e": e, "order": N}, lambda v, e=e: _ternary_beta_form(v, e, N))
    return oracle.reports


def _degree_reduction(v: Verdict, r: int, B: RationalSeries, N: int):
    """With x = -c^(r-1)/(c-1)^r, w^r - w^(r-1) + x factors as (w - c/(c-1)) times a
    degree r-1 cofactor, and 1/B_r(x(c)) is the root of the cofactor with w(0) = 1."""
    c = RationalSeries.var(N)
    xc = c_substitution(r, N)
    # cofactor coefficients, highest power of w first: 1, then c^i/(c-1)^(i+1)
    cof = [RationalSeries.const(1, N)] + [c**i / ((c - 1) ** (i + 1)) for i in range(r - 1)]
    root = c / (c - 1)
    # (w - root) * sum_j cof[j] w^(r-1-j), collected by descending power of w
    product = [RationalSeries.const(0, N)] * (r + 1)
    for j, a in enumerate(cof):
        product[j] = product[j] + a
        product[j + 1] = product[j + 1] - root * a
    target = [RationalSeries.const(0, N)] * (r + 1)
    target[0] = RationalSeries.const(1, N)
    target[1] = RationalSeries.const(-1, N)
    target[r] = target[r] + xc
    for j in range(r + 1):
        _compare(v, product[j], target[j], "c", label=f"w^{r - j}")
    w = series_inv(series_compose(B, xc))
    if w[0] != 1:
        v.fail(Witness("coefficient", "w(0)", str(w[0]), "1"))
    residual = RationalSeries.const(0, N)
    for j, a in enumerate(cof):
        residual = residual + a * w ** (r - 1 - j)
    _compare(v, residual, 0, "c", label="cofactor(w)")


def _binary_closed_form(v: Verdict, e: int, N: int):
    c = RationalSeries.var(N)
    xc = c_substitution(2, N)
    _compare(v, series_compose(series_Br(2, N), xc), 1 - c, "c", label="B_2")
    lhs = series_compose(series_y(2, e, N), xc)
    _compare(v, lhs, (1 - c) ** (e + 1) / (1 + c), "c")


def _binary_sqrt_form(v: Verdict, e: int, N: int):
    # one extra order absorbs the division by x
    x = RationalSeries.var(N + 1)
    root = series_pow_rational(1 - 4 * x, Fraction(1, 2))
    catalan = ((1 - root) * Fraction(1, 2)).divide_by_var()
    lhs = series_y(2, e, N)
    rhs = series_pow_rational((1 - 4 * x).truncate(N), Fraction(-1, 2)) * catalan**e
    _compare(v, lhs, rhs, "x")
    # c = 1 - catalan(x) inverts x = -c/(c-1)^2
    back = series_compose(c_substitution(2, N), 1 - catalan)
    _compare(v, back, RationalSeries.var(N), "x", label="inverse")


def _binary_beta_form(v: Verdict, e: int, N: int):
    b = RationalSeries.var(N)
    lhs = series_compose(series_y(2, e, N), beta_substitution(N))
    _compare(v, lhs, 1 / ((1 - 2 * b) * (1 - b) ** e), "beta")


def _ternary_closed_form(v: Verdict, N: int):
    b = RationalSeries.var(N)
    B3 = series_Br(3, N)
    lhs = series_compose(series_compose(B3, ternary_x_of_c(N)), beta_substitution(N))
    _compare(v, lhs, (1 - b + b * b) / (1 - b), "beta")
    _compare(v, lhs, (1 + b**3) / (1 - b * b), "beta", label="alt")
    # the same value written with a square root in c, with one extra order for the division by c
    c = RationalSeries.var(N + 1)
    sq = series_pow_rational(1 - 4 * c, Fraction(1, 2))
    in_c = (1 - c).truncate(N) * ((1 - sq) * Fraction(1, 2)).divide_by_var()
    _compare(v, series_compose(B3, ternary_x_of_c(N)), in_c, "c", label="sqrt")


def _ternary_beta_form(v: Verdict, e: int, N: int):
    b = RationalSeries.var(N)
    c = beta_substitution(N)
    lhs = series_compose(series_compose(series_y(3, e, N), ternary_x_of_c(N)), c)
    rhs = (1 - b + b * b) ** (e + 1) / ((1 + b) * (1 - 2 * b) * (1 - b) ** e)
    _compare(v, lhs, rhs, "beta")
    # rewritten with 1 - b + b^2 = 1 - c and (2 - b)(1 + b) = 2 + c
    alt = (1 - c) / (2 * (2 + c)) * (1 + 3 / (1 - 2 * b)) * (1 - c) ** e / (1 - b) ** e
    _compare(v, lhs, alt, "beta", label="alt")


def cardano_x_of_s(order: int) -> RationalSeries:
    """x = 4 s^2 / (27 (s^2 - 1))."""
    s = RationalSeries.var(order)
    return 4 * s * s * series_inv(27 * (s * s - 1))


def check_cardano_series(order: int = DEFAULT_ORDER) -> CongruenceReport:
    """sum_k C(3k,k) x(s)^k against the radical closed form in s, plus the cubic it satisfies."""
    if order < 8:
        raise ValueError("order must be at least 8")
    N = order
    start = time.perf_counter()
    v = Verdict()
    s = RationalSeries.var(N)
    y1 = series_compose(series_y(3, 0, N), cardano_x_of_s(N))
    third, two_thirds = Fraction(1, 3), Fraction(2, 3)
    plus, minus = 1 + s, 1 - s
    rhs = series_pow_rational(plus, two_thirds) * series_pow_rational(minus, third) + series_pow_rational(
        minus, two_thirds
    ) * series_pow_rational(plus, third)
    _compare(v, 2 * y1, rhs, "s")
    cubic = 4 / (1 - s * s) * y1**3 - 3 * y1 - 1
    _compare(v, cubic, 0, "s", label="cubic")
    y2 = (
        Fraction(1, 2)
        * series_pow_rational(1 - s * s, third)
        * (series_pow_rational(plus, third) + series_pow_rational(minus, third))
    )
    _compare(v, y1, y2, "s", label="cube-root-form")
    return v.report("oracle:cardano", {"order": N}, elapsed_ms(start))
