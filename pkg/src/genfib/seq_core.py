"""Exact evaluation of f_n(s, t) and its Lucas companion g_n(s, t).

f_0 = 0, f_1 = 1 and g_0 = 2, g_1 = s, both obeying x_n = s*x_{n-1} + t*x_{n-2}.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import PreconditionError

__all__ = [
    "SeqParams",
    "BigPair",
    "fib_iter",
    "fib_fast",
    "fib",
    "fib_list",
    "lucas",
    "lucas_list",
    "addition_identity_check",
    "gcd_index_check",
]


@dataclass(frozen=True)
class SeqParams:
    s: int
    t: int

    @property
    def discriminant(self) -> int:
        """D = s^2 + 4t, the discriminant of x^2 - s*x - t."""
        return self.s * self.s + 4 * self.t

    def __str__(self) -> str:
        return f"({self.s},{self.t})"


@dataclass(frozen=True)
class BigPair:
    """Consecutive terms (f_index, f_{index+1})."""

    lo: int
    hi: int
    index: int

    def advance(self, params: SeqParams) -> BigPair:
        return BigPair(self.hi, params.s * self.hi + params.t * self.lo, self.index + 1)


def _check_index(n: int) -> None:
    if n < 0:
        raise PreconditionError(f"index must be non-negative, got {n}")


def fib_iter(params: SeqParams, n: int) -> int:
    _check_index(n)
    s, t = params.s, params.t
    a, b = 0, 1
    for _ in range(n):
        a, b = b, s * b + t * a
    return a


def fib_fast(params: SeqParams, n: int) -> BigPair:
    """Return (f_n, f_{n+1}) with O(log n) multiplications.

    Doubling step, from the addition formula f_{a+b} = f_{a+1} f_b + t f_a f_{b-1}:
        f_{2k}   = f_k (2 f_{k+1} - s f_k)
        f_{2k+1} = f_{k+1}^2 + t f_k^2
    """
    _check_index(n)
    s, t = params.s, params.t
    a, b = 0, 1  # f_k, f_{k+1} for k = 0
    for bit in bin(n)[2:]:
        a, b = a * (2 * b - s * a), b * b + t * a * a
        if bit == "1":
            a, b = b, s * b + t * a
    return BigPair(a, b, n)


def fib(params: SeqParams, n: int) -> int:
    """f_n(s, t); the fast path."""
    return fib_fast(params, n).lo


def fib_list(params: SeqParams, count: int) -> list[int]:
    """f_0, ..., f_{count-1}."""
    s, t = params.s, params.t
    out = []
    a, b = 0, 1
    for _ in range(count):
        out.append(a)
        a, b = b, s * b + t * a
    return out


def lucas(params: SeqParams, n: int) -> int:
    _check_index(n)
    s, t = params.s, params.t
    a, b = 2, s
    for _ in range(n):
        a, b = b, s * b + t * a
    return a


def lucas_list(params: SeqParams, count: int) -> list[int]:
    s, t = params.s, params.t
    out = []
    a, b = 2, s
    for _ in range(count):
        out.append(a)
        a, b = b, s * b + t * a
    return out


def addition_identity_check(params: SeqParams, m: int, n: int) -> bool:
    """f_{m+n} == f_{m+1} f_n + t f_m f_{n-1}, evaluated exactly."""
    if m < 1 or n < 1:
        raise PreconditionError("m and n must be positive")
    lhs = fib_iter(params, m + n)
    rhs = fib_iter(params, m + 1) * fib_iter(params, n) + params.t * fib_iter(params, m) * fib_iter(params, n - 1)
    return lhs == rhs


def gcd_index_check(params: SeqParams, m: int, n: int) -> bool:
    """gcd(|f_n|, |f_m|) == |f_gcd(n, m)|."""
    if m < 1 or n < 1:
        raise PreconditionError("m and n must be positive")
    return gcd(fib(params, m), fib(params, n)) == abs(fib(params, gcd(m, n)))
