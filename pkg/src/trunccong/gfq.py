"""Extension fields F_{p^n} and root counting of small-degree polynomials over them.

Elements are stored in the monomial basis of a monic irreducible ``modpoly``.
For n = 1 the context is F_p itself and elements carry a single coordinate.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np
from sympy import factorint

from .modmath import PrimePower, ZeroInverse
from .polyring import DensePoly, poly_gcd, powmod


class NotPresent(LookupError):
    """Raised when a requested element (i, omega, sqrt d) does not exist in the field."""


def is_irreducible(f: DensePoly) -> bool:
    """Rabin's test: z^(p^n) = z mod f and gcd(z^(p^(n/l)) - z, f) = 1 for primes l | n."""
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    p = f.p
    f = f.monic()
    z = DensePoly.monomial(1, p)
    if powmod(z, p**n, f) != z % f:
        return False
    for ell in factorint(n):
        h = powmod(z, p ** (n // ell), f) - z
        if poly_gcd(h, f).degree != 0:
            return False
    return True


class FqContext:
    """The field F_q, q = p^n, as F_p[z]/(modpoly)."""

    def __init__(self, p: int, n: int = 1, modpoly=None):
        self.pp = PrimePower(p, n)
        self.p = p
        self.n = n
        self.q = p**n
        if n == 1:
            modpoly = [0, 1]
        if modpoly is None:
            raise ValueError("an extension field needs a defining polynomial")
        mod = DensePoly(modpoly, p)
        if mod.degree != n or mod.lead != 1:
            raise ValueError(f"defining polynomial must be monic of degree {n}")
        if not is_irreducible(mod):
            raise ValueError(f"{mod} is reducible over F_{p}")
        self.modpoly = mod
        # z^n = sum_i _red[i] z^i
        self._red = tuple((-c) % p for c in mod.tolist()[:n])
        self.zero = FqElement(self, (0,) * n)
        self.one = self(1)

    def __repr__(self):
        if self.n == 1:
            return f"FqContext(F_{self.p})"
        return f"FqContext(F_{self.p}^{self.n} = F_{self.p}[z]/({self.modpoly.tolist()}))"

    def __call__(self, value) -> "FqElement":
        if isinstance(value, FqElement):
            if value.ctx is not self:
                raise ValueError("element belongs to another field")
            return value
        p = self.p
        if isinstance(value, Fraction):
            den = value.denominator % p
            if den == 0:
                raise ZeroInverse(f"{value} is not p-integral for p={p}")
            value = value.numerator * pow(den, -1, p)
        if isinstance(value, (int, np.integer)):
            return FqElement(self, (int(value) % p,) + (0,) * (self.n - 1))
        coords = [int(c) % p for c in value]
        if len(coords) > self.n:
            raise ValueError("too many coordinates")
        return FqElement(self, tuple(coords) + (0,) * (self.n - len(coords)))

    @property
    def gen(self) -> "FqElement":
        """The class of z (for n = 1 this is the root of z, i.e. 0)."""
        return self([0, 1]) if self.n > 1 else self.zero

    def elements(self):
        for coords in itertools.product(range(self.p), repeat=self.n):
            yield FqElement(self, coords[::-1])

    def random_element(self, rng: random.Random) -> "FqElement":
        return FqElement(self, tuple(rng.randrange(self.p) for _ in range(self.n)))

    def to_array(self, elems) -> np.ndarray:
        return np.array([e.coords for e in elems], dtype=np.int64).reshape(-1, self.n)

    def _mul(self, a: tuple, b: tuple) -> tuple:
        p, n = self.p, self.n
        if n == 1:
            return (a[0] * b[0] % p,)
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        red = self._red
        for k in range(2 * n - 2, n - 1, -1):
            t = prod[k] % p
            if t:
                base = k - n
                for i, r in enumerate(red):
                    prod[base + i] += t * r
        return tuple(c % p for c in prod[:n])


class FqElement:
    __slots__ = ("ctx", "coords")

    def __init__(self, ctx: FqContext, coords: tuple):
        self.ctx = ctx
        self.coords = coords

    def _other(self, other) -> "FqElement":
        if isinstance(other, FqElement):
            if other.ctx is not self.ctx:
                raise ValueError("elements from different fields")
            return other
        return self.ctx(other)

    def __add__(self, other):
        other = self._other(other)
        p = self.ctx.p
        return FqElement(self.ctx, tuple((a + b) % p for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return FqElement(self.ctx, tuple(-a % p for a in self.coords))

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        other = self._other(other)
        return FqElement(self.ctx, self.ctx._mul(self.coords, other.coords))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        ctx = self.ctx
        result = ctx.one.coords
        base = self.coords
        while e:
            if e & 1:
                result = ctx._mul(result, base)
            e >>= 1
            if e:
                base = ctx._mul(base, base)
        return FqElement(ctx, result)

    def inverse(self) -> "FqElement":
        if self.is_zero():
            raise ZeroInverse("0 has no inverse")
        return self ** (self.ctx.q - 2)

    def __truediv__(self, other):
        return self * self._other(other).inverse()

    def __rtruediv__(self, other):
        return self._other(other) * self.inverse()

    def frobenius(self) -> "FqElement":
        return self ** self.ctx.p

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def in_prime_field(self) -> bool:
        return not any(self.coords[1:])

    def __int__(self):
        if not self.in_prime_field():
            raise ValueError(f"{self} is not in the prime field")
        return self.coords[0]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, np.integer)):
            other = self.ctx(other)
        if not isinstance(other, FqElement):
            return NotImplemented
        return self.ctx is other.ctx and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __str__(self):
        if self.ctx.n == 1:
            return str(self.coords[0])
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    def __repr__(self):
        if self.ctx.n == 1:
            return f"{self.coords[0]} (mod {self.ctx.p})"
        return f"Fq{list(self.coords)}"


def build_field(p: int, n: int = 1, seed: int = 0) -> FqContext:
    """F_{p^n} with a defining polynomial drawn from a seeded generator."""
    if n == 1:
        return FqContext(p, 1)
    rng = random.Random(seed)
    while True:
        coeffs = [rng.randrange(p) for _ in range(n)] + [1]
        if coeffs[0] and is_irreducible(DensePoly(coeffs, p)):
            return FqContext(p, n, coeffs)


# polynomials with coefficients in F_q: ascending lists of FqElement, trimmed


def _as_fq_poly(f, ctx: FqContext) -> list:
    if isinstance(f, DensePoly):
        f = f.tolist()
    out = [ctx(c) for c in f]
    while out and out[-1].is_zero():
        out.pop()
    return out


def _fq_trim(f: list) -> list:
    while f and f[-1].is_zero():
        f.pop()
    return f


def _fq_mul(a: list, b: list, ctx: FqContext) -> list:
    if not a or not b:
        return []
    out = [ctx.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
    return _fq_trim(out)


def _fq_divmod(a: list, b: list) -> tuple[list, list]:
    if not b:
        raise ZeroInverse("division by the zero polynomial")
    rem = list(a)
    db = len(b) - 1
    if len(rem) <= db:
        return [], rem
    inv_lead = b[-1].inverse()
    quo = [b[0].ctx.zero] * (len(rem) - db)
    for i in range(len(rem) - db - 1, -1, -1):
        t = rem[i + db] * inv_lead
        if t:
            quo[i] = t
            for j, bj in enumerate(b):
                rem[i + j] = rem[i + j] - t * bj
    return _fq_trim(quo), _fq_trim(rem[:db])


def _fq_monic(f: list) -> list:
    if not f:
        return f
    inv = f[-1].inverse()
    return [c * inv for c in f]


def _fq_gcd(a: list, b: list) -> list:
    while b:
        a, b = b, _fq_divmod(a, b)[1]
    return _fq_monic(a)


def _fq_powmod(base: list, e: int, mod: list, ctx: FqContext) -> list:
    result = _fq_divmod([ctx.one], mod)[1]
    base = _fq_divmod(base, mod)[1]
    while e:
        if e & 1:
            result = _fq_divmod(_fq_mul(result, base, ctx), mod)[1]
        e >>= 1
        if e:
            base = _fq_divmod(_fq_mul(base, base, ctx), mod)[1]
    return result


def _fq_sub(a: list, b: list, ctx: FqContext) -> list:
    n = max(len(a), len(b))
    a = a + [ctx.zero] * (n - len(a))
    b = b + [ctx.zero] * (n - len(b))
    return _fq_trim([x - y for x, y in zip(a, b)])


def _split_off_roots(f: list, ctx: FqContext) -> list:
    """gcd(z^q - z, f): the product of the distinct linear factors of f over F_q."""
    z = [ctx.zero, ctx.one]
    zq = _fq_powmod(z, ctx.q, f, ctx)
    return _fq_gcd(_fq_sub(zq, z, ctx), f)


def count_roots_in_fq(f, ctx: FqContext) -> int:
    """Number of distinct roots of f in F_q, as deg gcd(z^q - z mod f, f)."""
    f = _as_fq_poly(f, ctx)
    if len(f) < 2:
        raise ValueError("need a polynomial of degree >= 1")
    return len(_split_off_roots(_fq_monic(f), ctx)) - 1


def is_squarefree(f, ctx: FqContext) -> bool:
    f = _as_fq_poly(f, ctx)
    deriv = _fq_trim([c * i for i, c in enumerate(f)][1:])
    if not deriv:
        return False
    return len(_fq_gcd(f, deriv)) == 1


def roots_in_fq(f, ctx: FqContext, seed: int = 0) -> list:
    """Distinct roots of f in F_q (odd p), by equal-degree splitting."""
    f = _as_fq_poly(f, ctx)
    rng = random.Random(seed)
    pending = [_split_off_roots(_fq_monic(f), ctx)]
    roots = []
    while pending:
        g = pending.pop()
        if len(g) <= 1:
            continue
        if len(g) == 2:
            roots.append(-g[0])
            continue
        if ctx.p == 2:
            raise ValueError("splitting needs an odd characteristic")
        while True:
            shift = [ctx.random_element(rng), ctx.one]
            h = _fq_powmod(shift, (ctx.q - 1) // 2, g, ctx)
            d = _fq_gcd(_fq_sub(h, [ctx.one], ctx), g)
            if 1 < len(d) < len(g):
                pending.append(d)
                pending.append(_fq_divmod(g, d)[0])
                break
    return sorted(roots, key=lambda r: r.coords[::-1])


def find_special_element(ctx: FqContext, kind: str, d=None) -> FqElement:
    """A root of z^2 + 1 ("i"), z^2 + z + 1 ("omega") or z^2 - d ("sqrt")."""
    if kind == "i":
        f = [1, 0, 1]
    elif kind == "omega":
        f = [1, 1, 1]
    elif kind == "sqrt":
        if d is None:
            raise ValueError("sqrt needs d")
        f = [-ctx(d), ctx.zero, ctx.one]
    else:
        raise ValueError(f"unknown element kind {kind!r}")
    f = _as_fq_poly(f, ctx)
    if ctx.n == 1:
        for t in range(ctx.p):
            x = ctx(t)
            if _fq_eval(f, x).is_zero():
                return x
        raise NotPresent(f"no {kind} in F_{ctx.p}")
    roots = roots_in_fq(f, ctx)
    if not roots:
        raise NotPresent(f"no {kind} in F_{ctx.p}^{ctx.n}")
    return roots[0]


def _fq_eval(f: list, x: FqElement) -> FqElement:
    acc = x.ctx.zero
    for c in reversed(f):
        acc = acc * x + c
    return acc
