"""Dense univariate polynomials over F_p.

Coefficients live in an int64 numpy array in ascending degree order, trimmed so
the last entry is nonzero; the zero polynomial is the empty array.  The variable
name (c, beta, s, z) is a convention of the caller.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .binom import MAX_P
from .modmath import ZeroInverse

_I64_BOUND = 1 << 62


class InexactDivision(ArithmeticError):
    """Raised by ``exact_div`` when the remainder is nonzero."""


def _trim(arr: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(arr)
    return arr[: nz[-1] + 1] if len(nz) else arr[:0]


def _convolve_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if not len(a) or not len(b):
        return np.zeros(0, dtype=np.int64)
    if min(len(a), len(b)) * (p - 1) ** 2 < _I64_BOUND:
        return np.convolve(a, b) % p
    # split into 16-bit halves so every partial convolution fits in int64
    a_hi, a_lo = a >> 16, a & 0xFFFF
    b_hi, b_lo = b >> 16, b & 0xFFFF
    hh = np.convolve(a_hi, b_hi) % p
    mid = (np.convolve(a_hi, b_lo) % p + np.convolve(a_lo, b_hi) % p) % p
    ll = np.convolve(a_lo, b_lo) % p
    s16 = (1 << 16) % p
    s32 = (1 << 32) % p
    return (hh * s32 % p + mid * s16 % p + ll) % p


class DensePoly:
    """Immutable polynomial over F_p in canonical (trimmed) form."""

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs, p: int):
        if not 2 <= p < MAX_P:
            raise ValueError(f"modulus {p} outside [2, 2**31)")
        if isinstance(coeffs, np.ndarray) and coeffs.dtype == np.int64:
            arr = coeffs % p
        else:
            arr = np.array([int(c) % p for c in coeffs], dtype=np.int64)
        arr = _trim(arr)
        arr.flags.writeable = False
        self.coeffs = arr
        self.p = p

    # constructors

    @classmethod
    def zero(cls, p: int) -> "DensePoly":
        return cls(np.zeros(0, dtype=np.int64), p)

    @classmethod
    def const(cls, a: int, p: int) -> "DensePoly":
        return cls([a], p)

    @classmethod
    def monomial(cls, k: int, p: int, coeff: int = 1) -> "DensePoly":
        arr = np.zeros(k + 1, dtype=np.int64)
        arr[k] = coeff % p
        return cls(arr, p)

    @classmethod
    def linear(cls, a0: int, a1: int, p: int) -> "DensePoly":
        """a0 + a1*x."""
        return cls([a0, a1], p)

    # basic structure

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not len(self.coeffs)

    @property
    def lead(self) -> int:
        return int(self.coeffs[-1]) if len(self.coeffs) else 0

    def __getitem__(self, i: int) -> int:
        return int(self.coeffs[i]) if 0 <= i < len(self.coeffs) else 0

    def tolist(self) -> list[int]:
        return [int(c) for c in self.coeffs]

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = DensePoly.const(other, self.p)
        if not isinstance(other, DensePoly):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.p, self.coeffs.tobytes()))

    def __repr__(self):
        if self.is_zero():
            return f"DensePoly(0 mod {self.p})"
        terms = [f"{c}*x^{i}" if i else str(c) for i, c in enumerate(self.tolist()) if c]
        return f"DensePoly({' + '.join(terms)} mod {self.p})"

    # ring operations

    def _coerce(self, other) -> "DensePoly":
        if isinstance(other, DensePoly):
            if other.p != self.p:
                raise ValueError(f"moduli differ: {self.p} vs {other.p}")
            return other
        if isinstance(other, (int, np.integer)):
            return DensePoly.const(int(other), self.p)
        raise TypeError(f"cannot combine DensePoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = a.copy()
        out[: len(b)] += b
        return DensePoly(out, self.p)

    __radd__ = __add__

    def __neg__(self):
        return DensePoly(-self.coeffs, self.p)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return DensePoly(self.coeffs * (int(other) % self.p), self.p)
        other = self._coerce(other)
        return DensePoly(_convolve_mod(self.coeffs, other.coeffs, self.p), self.p)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = DensePoly.const(1, self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, k: int) -> "DensePoly":
        """Multiply by x**k."""
        if self.is_zero():
            return self
        return DensePoly(np.concatenate([np.zeros(k, dtype=np.int64), self.coeffs]), self.p)

    def divmod(self, divisor: "DensePoly") -> tuple["DensePoly", "DensePoly"]:
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroInverse("division by the zero polynomial")
        p = self.p
        db = divisor.degree
        rem = self.coeffs.copy()
        if len(rem) <= db:
            return DensePoly.zero(p), self
        inv_lead = pow(divisor.lead, -1, p)
        b = divisor.coeffs
        quo = np.zeros(len(rem) - db, dtype=np.int64)
        for i in range(len(rem) - db - 1, -1, -1):
            t = int(rem[i + db]) * inv_lead % p
            if t:
                quo[i] = t
                rem[i : i + db + 1] = (rem[i : i + db + 1] - t * b) % p
        return DensePoly(quo, p), DensePoly(rem[:db], p)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, divisor: "DensePoly") -> "DensePoly":
        quo, rem = self.divmod(divisor)
        if not rem.is_zero():
            raise InexactDivision(f"remainder of degree {rem.degree}")
        return quo

    def monic(self) -> "DensePoly":
        if self.is_zero():
            return self
        return self * pow(self.lead, -1, self.p)

    def derivative(self) -> "DensePoly":
        n = len(self.coeffs)
        if n <= 1:
            return DensePoly.zero(self.p)
        return DensePoly(self.coeffs[1:] * (np.arange(1, n, dtype=np.int64) % self.p), self.p)

    # substitution and evaluation

    def compose(self, g: "DensePoly") -> "DensePoly":
        """self(g) by Horner's rule."""
        g = self._coerce(g)
        p = self.p
        acc = np.zeros(0, dtype=np.int64)
        for a in self.coeffs[::-1]:
            acc = _convolve_mod(acc, g.coeffs, p)
            if len(acc):
                acc[0] = (acc[0] + a) % p
            else:
                acc = np.array([a], dtype=np.int64)
        return DensePoly(acc, p)

    def reflect(self) -> "DensePoly":
        """self(1 - x)."""
        return self.compose(DensePoly.linear(1, -1, self.p))

    def __call__(self, x: int) -> int:
        p = self.p
        x %= p
        acc = 0
        for a in self.coeffs[::-1].tolist():
            acc = (acc * x + a) % p
        return acc

    def evaluate_many(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=np.int64) % self.p
        acc = np.zeros(pts.shape, dtype=np.int64)
        for a in self.coeffs[::-1]:
            acc = (acc * pts + a) % self.p
        return acc


def poly_gcd(a: DensePoly, b: DensePoly) -> DensePoly:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def powmod(base: DensePoly, e: int, modulus: DensePoly) -> DensePoly:
    """base**e mod modulus with an arbitrary-precision exponent."""
    result = DensePoly.const(1, base.p) % modulus
    base = base % modulus
    while e:
        if e & 1:
            result = (result * base) % modulus
        e >>= 1
        if e:
            base = (base * base) % modulus
    return result


def subst_c_of_beta(f: DensePoly) -> DensePoly:
    """f(c) with c = beta - beta**2, as a polynomial in beta."""
    return f.compose(DensePoly([0, 1, -1], f.p))


def reduce_mod_cq_minus_c(f: DensePoly, q: int) -> DensePoly:
    """Reduce f modulo c**q - c: exponents m >= q fold to ((m - 1) mod (q - 1)) + 1."""
    n = len(f.coeffs)
    if n <= q:
        return f
    exps = np.arange(n, dtype=np.int64)
    targets = np.where(exps >= q, (exps - 1) % (q - 1) + 1, exps)
    out = np.zeros(q, dtype=np.int64)
    np.add.at(out, targets, f.coeffs)
    return DensePoly(out % f.p, f.p)


@dataclass(frozen=True)
class LucasPolyPair:
    """g_n = alpha**n + beta**n and h_n = (alpha**n - beta**n)/(alpha - beta) as polynomials
    in c = alpha*beta, where alpha + beta = 1."""

    g: DensePoly
    h: DensePoly
    n: int


def lucas_poly(n: int, p: int) -> LucasPolyPair:
    """g_n, h_n by the recurrence t_n = t_{n-1} - c t_{n-2}."""
    if n < 0:
        raise ValueError("negative index")
    size = n // 2 + 2
    g_prev, g_cur = np.zeros(size, dtype=np.int64), np.zeros(size, dtype=np.int64)
    h_prev, h_cur = np.zeros(size, dtype=np.int64), np.zeros(size, dtype=np.int64)
    g_prev[0], g_cur[0] = 2 % p, 1  # g_0, g_1
    h_cur[0] = 1  # h_0 = 0, h_1 = 1
    if n == 0:
        return LucasPolyPair(DensePoly(g_prev, p), DensePoly(h_prev, p), 0)
    for _ in range(n - 1):
        g_next = g_cur.copy()
        g_next[1:] -= g_prev[:-1]
        h_next = h_cur.copy()
        h_next[1:] -= h_prev[:-1]
        g_prev, g_cur = g_cur, g_next % p
        h_prev, h_cur = h_cur, h_next % p
    return LucasPolyPair(DensePoly(g_cur, p), DensePoly(h_cur, p), n)


def lucas_poly_beta(n: int, p: int) -> tuple[DensePoly, DensePoly]:
    """The same pair written in beta with alpha = 1 - beta: (1-b)^n + b^n and
    ((1-b)^n - b^n) / (1 - 2b), the latter by exact division."""
    alpha_n = DensePoly.linear(1, -1, p) ** n
    beta_n = DensePoly.monomial(n, p)
    g = alpha_n + beta_n
    h = (alpha_n - beta_n).exact_div(DensePoly.linear(1, -2, p))
    return g, h
