"""Prime-field scalar arithmetic and the sequence/symbol primitives.

Residues mod p are plain Python ints in ``[0, p)``; indices and prime powers are
arbitrary precision.  Everything here is pure.
"""

from __future__ import annotations

from dataclasses import dataclass

from sympy import isprime, primerange


class ZeroInverse(ZeroDivisionError):
    """Raised when inverting zero in a field."""


class BadPrime(ValueError):
    """Raised when an operation is asked for a prime it does not support."""


class BadParameter(ValueError):
    """Raised when a derived index or exponent fails an exact-divisibility check."""


@dataclass(frozen=True)
class PrimePower:
    """q = p**n for a prime p and n >= 1."""

    p: int
    n: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"exponent must be positive, got n={self.n}")
        if not isprime(self.p):
            raise BadPrime(f"{self.p} is not prime")

    @property
    def q(self) -> int:
        return self.p**self.n

    @property
    def epsilon(self) -> int:
        return epsilon(self)

    def require_odd(self):
        if self.p == 2:
            raise BadPrime("this operation needs an odd prime")

    def require_above_three(self):
        if self.p <= 3:
            raise BadPrime(f"this operation needs p > 3, got p={self.p}")

    def __str__(self):
        return f"{self.p}^{self.n}" if self.n > 1 else str(self.p)


def exact_div(a: int, b: int) -> int:
    """a // b, refusing to round."""
    quo, rem = divmod(a, b)
    if rem:
        raise BadParameter(f"{a} is not divisible by {b}")
    return quo


def ceil_div(a: int, b: int) -> int:
    """Exact ceiling of a/b for b > 0."""
    return -(-a // b)


def mod_inv(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroInverse(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) by Euler's criterion."""
    if p == 2:
        raise BadPrime("Legendre symbol needs an odd prime")
    t = pow(a % p, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


def epsilon(pp: PrimePower) -> int:
    """+1 if q = 1 (mod 3), -1 if q = -1 (mod 3)."""
    if pp.p == 3:
        raise BadPrime("epsilon is undefined for p = 3")
    # (q|3) is multiplicative: (p|3)^n
    sign = 1 if pp.p % 3 == 1 else -1
    value = sign**pp.n
    assert (pp.q - value) % 3 == 0
    return value


def _fib_pair(n: int, p: int) -> tuple[int, int]:
    # fast doubling: returns (F_n, F_{n+1}) mod p
    if n == 0:
        return 0, 1 % p
    a, b = _fib_pair(n >> 1, p)
    c = a * ((2 * b - a) % p) % p
    d = (a * a + b * b) % p
    if n & 1:
        return d, (c + d) % p
    return c, d


def fib_mod(n: int, p: int) -> int:
    """Fibonacci number F_n mod p (F_0 = 0, F_1 = 1)."""
    if n < 0:
        raise ValueError("negative index")
    return _fib_pair(n, p)[0]


def lucas_mod(n: int, p: int) -> int:
    """Lucas number L_n = F_{n-1} + F_{n+1} mod p."""
    if n < 0:
        raise ValueError("negative index")
    f, g = _fib_pair(n, p)
    return (2 * g - f) % p


def lucas_pair_mod(P: int, Q: int, n: int, p: int) -> tuple[int, int]:
    """Lucas sequences (U_n, V_n) of t_n = P t_{n-1} - Q t_{n-2} mod p.

    Uses square-and-multiply on the companion matrix [[P, -Q], [1, 0]], whose
    n-th power applied to (U_1, U_0) = (1, 0) and (V_1, V_0) = (P, 2) gives
    (U_{n+1}, U_n) and (V_{n+1}, V_n).
    """
    if n < 0:
        raise ValueError("negative index")
    P %= p
    Q %= p
    # 2x2 matrices as (a, b, c, d) row-major
    result = (1, 0, 0, 1)
    base = (P, -Q % p, 1, 0)
    while n:
        if n & 1:
            result = _mat_mul(result, base, p)
        base = _mat_mul(base, base, p)
        n >>= 1
    a, b, c, d = result
    u = c  # second row applied to (1, 0)
    v = (c * P + d * 2) % p
    return u % p, v


def _mat_mul(x, y, p):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)


def odd_primes(lo: int, hi: int) -> list[int]:
    """Odd primes p with lo <= p < hi."""
    return list(primerange(max(lo, 3), hi))
