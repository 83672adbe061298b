"""Prime fields, their quadratic extensions, and rank as a multiplicative order.

With X, Y the roots of x^2 - s*x - t, f_h = (X^h - Y^h)/(X - Y), so when
p does not divide t*D the rank modulo p is the least h with (X/Y)^h = 1.
For t = -1 we have XY = 1, hence X/Y = X^2 and the rank is ord(X)/2 or
ord(X) depending on the parity of ord(X).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt
from typing import Union

from .errors import PreconditionError
from .seq_core import SeqParams

__all__ = [
    "is_prime",
    "require_odd_prime",
    "factorize",
    "legendre",
    "sqrt_mod",
    "PrimeField",
    "PrimeFieldElem",
    "QuadExtField",
    "QuadExtElem",
    "mult_order",
    "rank_via_order",
    "rank_via_order_general",
]

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 1 << 64
_TRIAL_LIMIT = 10**6


def _mr_witnesses_composite(n: int) -> bool:
    """True if some base proves the odd n > 37 composite; a proof for any size of n."""
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return True
    return False


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 2**64."""
    if n >= _MR_LIMIT:
        raise PreconditionError(f"primality test limited to 64-bit inputs, got {n}")
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    return not _mr_witnesses_composite(n)


def require_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise PreconditionError(f"{p} is not an odd prime")


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite n."""
    for c in range(1, 200):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        f = lambda v: (v * v + c) % n  # noqa: E731
        while g == 1:
            x = y
            for _ in range(r):
                y = f(y)
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = f(y)
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = f(ys)
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"Pollard rho failed to split {n}")


def _iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 1."""
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _perfect_power(n: int) -> tuple[int, int] | None:
    for k in range(2, n.bit_length() + 1):
        root = _iroot(n, k)
        if root < 2:
            break
        if root**k == n:
            return root, k
    return None


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    # rho needs ~sqrt(p) steps on p^k, so peel perfect powers first
    pp = _perfect_power(n)
    if pp is not None:
        sub: dict[int, int] = {}
        _split(pp[0], sub)
        for q, e in sub.items():
            out[q] = out.get(q, 0) + e * pp[1]
        return
    if n < _MR_LIMIT:
        if is_prime(n):
            out[n] = out.get(n, 0) + 1
            return
    elif not _mr_witnesses_composite(n):
        raise PreconditionError(f"cannot certify the {n.bit_length()}-bit cofactor {n} as prime")
    d = _pollard_brent(n)
    _split(d, out)
    _split(n // d, out)


@lru_cache(maxsize=4096)
def _factorize_cached(n: int) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    for q in (2, 3):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    d = 5
    while d < _TRIAL_LIMIT and d * d <= n:
        for q in (d, d + 2):
            while n % q == 0:
                out[q] = out.get(q, 0) + 1
                n //= q
        d += 6
    if n > 1:
        if n < _TRIAL_LIMIT * _TRIAL_LIMIT:
            out[n] = out.get(n, 0) + 1
        else:
            _split(n, out)
    return tuple(sorted(out.items()))


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization as sorted (prime, exponent) pairs; factorize(1) == []."""
    if n < 1:
        raise PreconditionError(f"factorize needs a positive integer, got {n}")
    return list(_factorize_cached(n))


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion."""
    require_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod(a: int, p: int) -> int | None:
    """Smaller square root of a modulo p (Tonelli-Shanks), or None for non-residues."""
    ls = legendre(a, p)
    a %= p
    if ls == 0:
        return 0
    if ls == -1:
        return None
    if p % 4 == 3:
        x = pow(a, (p + 1) // 4, p)
    else:
        q, e = p - 1, 0
        while q % 2 == 0:
            q //= 2
            e += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c = e, pow(z, q, p)
        x, b = pow(a, (q + 1) // 2, p), pow(a, q, p)
        while b != 1:
            i, b2 = 0, b
            while b2 != 1:
                b2 = b2 * b2 % p
                i += 1
            g = pow(c, 1 << (m - i - 1), p)
            m, c = i, g * g % p
            x, b = x * g % p, b * c % p
    return min(x, p - x)


@dataclass(frozen=True)
class PrimeFieldElem:
    value: int
    p: int

    def __mul__(self, other: PrimeFieldElem) -> PrimeFieldElem:
        return PrimeFieldElem(self.value * other.value % self.p, self.p)

    def __add__(self, other: PrimeFieldElem) -> PrimeFieldElem:
        return PrimeFieldElem((self.value + other.value) % self.p, self.p)

    def __sub__(self, other: PrimeFieldElem) -> PrimeFieldElem:
        return PrimeFieldElem((self.value - other.value) % self.p, self.p)

    def __pow__(self, e: int) -> PrimeFieldElem:
        return PrimeFieldElem(pow(self.value, e, self.p), self.p)

    def inverse(self) -> PrimeFieldElem:
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return PrimeFieldElem(pow(self.value, -1, self.p), self.p)

    def is_zero(self) -> bool:
        return self.value == 0

    def is_one(self) -> bool:
        return self.value == 1


class PrimeField:
    """GF(p); p is checked once here so element arithmetic stays cheap."""

    def __init__(self, p: int):
        require_odd_prime(p)
        self.p = p

    def __call__(self, value: int) -> PrimeFieldElem:
        return PrimeFieldElem(value % self.p, self.p)

    def one(self) -> PrimeFieldElem:
        return PrimeFieldElem(1, self.p)


@dataclass(frozen=True)
class QuadExtElem:
    """a + b*w in GF(p)[w]/(w^2 - d)."""

    a: int
    b: int
    p: int
    d: int

    def __mul__(self, other: QuadExtElem) -> QuadExtElem:
        p = self.p
        a, b, c, e = self.a, self.b, other.a, other.b
        return QuadExtElem((a * c + b * e * self.d) % p, (a * e + b * c) % p, p, self.d)

    def __add__(self, other: QuadExtElem) -> QuadExtElem:
        return QuadExtElem((self.a + other.a) % self.p, (self.b + other.b) % self.p, self.p, self.d)

    def __sub__(self, other: QuadExtElem) -> QuadExtElem:
        return QuadExtElem((self.a - other.a) % self.p, (self.b - other.b) % self.p, self.p, self.d)

    def __pow__(self, e: int) -> QuadExtElem:
        if e < 0:
            return self.inverse() ** (-e)
        result = QuadExtElem(1, 0, self.p, self.d)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> QuadExtElem:
        return QuadExtElem(self.a, -self.b % self.p, self.p, self.d)

    def norm(self) -> int:
        return (self.a * self.a - self.d * self.b * self.b) % self.p

    def inverse(self) -> QuadExtElem:
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("element has zero norm")
        k = pow(nrm, -1, self.p)
        c = self.conjugate()
        return QuadExtElem(c.a * k % self.p, c.b * k % self.p, self.p, self.d)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_one(self) -> bool:
        return self.a == 1 and self.b == 0


class QuadExtField:
    """GF(p^2) = GF(p)(w) with w^2 = d for a quadratic non-residue d."""

    def __init__(self, p: int, d: int):
        if legendre(d, p) != -1:
            raise PreconditionError(f"{d} is not a non-residue mod {p}")
        self.p = p
        self.d = d % p

    def __call__(self, a: int, b: int = 0) -> QuadExtElem:
        return QuadExtElem(a % self.p, b % self.p, self.p, self.d)

    @property
    def omega(self) -> QuadExtElem:
        return self(0, 1)

    def one(self) -> QuadExtElem:
        return self(1, 0)


FieldElem = Union[PrimeFieldElem, QuadExtElem]


def mult_order(x: FieldElem, group_order: int, factors: list[tuple[int, int]] | None = None) -> int:
    """Least d >= 1 with x^d = 1, given that x^group_order = 1.

    `factors` may supply the factorization of group_order when it is already known.
    """
    if x.is_zero():
        raise PreconditionError("zero has no multiplicative order")
    if not (x**group_order).is_one():
        raise PreconditionError(f"x^{group_order} != 1; not an annihilating exponent")
    d = group_order
    for q, _ in factors if factors is not None else factorize(group_order):
        while d % q == 0 and (x ** (d // q)).is_one():
            d //= q
    return d


def _merge(*facs: list[tuple[int, int]]) -> list[tuple[int, int]]:
    out: dict[int, int] = {}
    for fac in facs:
        for q, e in fac:
            out[q] = out.get(q, 0) + e
    return sorted(out.items())


def _roots(s: int, t: int, p: int) -> tuple[FieldElem, FieldElem, int, list[tuple[int, int]], bool]:
    """X, Y = (s +/- sqrt(D))/2 in GF(p) or GF(p^2), with the full group order and its factors."""
    disc = (s * s + 4 * t) % p
    half = pow(2, -1, p)
    if legendre(disc, p) == 1:
        F = PrimeField(p)
        w = sqrt_mod(disc, p)
        return F((s + w) * half), F((s - w) * half), p - 1, factorize(p - 1), True
    K = QuadExtField(p, disc)
    X = K(s * half, half)
    Y = K(s * half, -half)
    return X, Y, p * p - 1, _merge(factorize(p - 1), factorize(p + 1)), False


def rank_via_order(s: int, p: int) -> int:
    """Rank of f_n(s, -1) modulo the odd prime p, read off from ord(X)."""
    require_odd_prime(p)
    if (s * s - 4) % p == 0:
        return p
    X, _, _, _, split = _roots(s, -1, p)
    if split:
        d = mult_order(X, p - 1)
    else:
        # XY = 1 and X^p = Y put X in the norm-one subgroup of order p + 1
        d = mult_order(X, p + 1)
    return d // 2 if d % 2 == 0 else d


def rank_via_order_general(params: SeqParams, p: int) -> int:
    """Rank of f_n(s, t) modulo p as ord(X/Y); requires p not dividing t or D."""
    require_odd_prime(p)
    s, t = params.s, params.t
    if t % p == 0:
        raise PreconditionError(f"{p} divides t={t}")
    if (s * s + 4 * t) % p == 0:
        raise PreconditionError(f"{p} divides D={s * s + 4 * t}; the rank is p")
    X, Y, order, facs, _ = _roots(s, t, p)
    return mult_order(X * Y.inverse(), order, facs)
