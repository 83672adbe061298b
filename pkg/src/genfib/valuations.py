"""p-adic and d-adic valuations of f_n(s, -1).

For an odd prime p with rank r = r(p) and e = nu_p(f_r):

    nu_p(f_n) = nu_p(n) - nu_p(r) + e   if r | n
              = 0                       otherwise

The d-adic witness (d', s') makes nu_d(f_n) = [d' | n] * nu_d(s' n / d').
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import GenFibError, InfiniteValuationError, PreconditionError, ZeroTermError
from .mod_rank import period_and_rank
from .quad_field import factorize, require_odd_prime
from .seq_core import SeqParams, fib, fib_fast, fib_list, lucas

__all__ = [
    "ValuationProfile",
    "DAdicWitness",
    "nu",
    "profile",
    "nu_fib_closed",
    "nu_prime_power",
    "nu_composite",
    "conjecture1_witness",
    "witness_holds",
    "lemma2_check",
    "lemma3_check",
]


@dataclass(frozen=True)
class ValuationProfile:
    p: int
    s: int
    rank_p: int
    e_p: int


@dataclass(frozen=True)
class DAdicWitness:
    d: int
    s: int
    d_prime: int
    s_prime: int
    validated_through: int


def nu(n: int, p: int) -> int:
    """Largest k with p^k | n. Works for any base p >= 2 by direct division."""
    if n == 0:
        raise InfiniteValuationError("valuation of 0 is infinite")
    if p < 2:
        raise PreconditionError(f"valuation base must be at least 2, got {p}")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _check_s(s: int) -> None:
    if s < 2:
        raise PreconditionError(f"s must be at least 2, got {s}")


@lru_cache(maxsize=None)
def profile(s: int, p: int) -> ValuationProfile:
    _check_s(s)
    require_odd_prime(p)
    r = period_and_rank(SeqParams(s, -1), p).rank
    assert r is not None  # t = -1 is a unit mod every p
    return ValuationProfile(p=p, s=s, rank_p=r, e_p=nu(fib(SeqParams(s, -1), r), p))


def nu_fib_closed(s: int, p: int, n: int) -> int:
    """nu_p(f_n(s, -1)) without computing f_n."""
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    prof = profile(s, p)
    if n % prof.rank_p:
        return 0
    return nu(n, p) - nu(prof.rank_p, p) + prof.e_p


def nu_prime_power(n: int, p: int, r: int) -> int:
    if r < 1:
        raise PreconditionError("exponent must be positive")
    return nu(n, p) // r


def nu_composite(n: int, d: int) -> int:
    """nu_d(n) as the minimum of floor(nu_p(n) / a) over p^a || d."""
    if d < 2:
        raise PreconditionError(f"d must be at least 2, got {d}")
    if n == 0:
        raise InfiniteValuationError("valuation of 0 is infinite")
    return min(nu_prime_power(n, p, a) for p, a in factorize(d))


@lru_cache(maxsize=32)
def _terms(s: int, count: int) -> tuple[int, ...]:
    return tuple(fib_list(SeqParams(s, -1), count))


def witness_holds(s: int, d: int, d_prime: int, s_prime: int, n: int, f_n: int | None = None) -> bool:
    """Check nu_d(f_n) == [d' | n] * nu_d(s' n / d') for one n, with the left side by direct division."""
    if f_n is None:
        f_n = fib(SeqParams(s, -1), n)
    lhs = nu(f_n, d)
    rhs = nu_composite(s_prime * n // d_prime, d) if n % d_prime == 0 else 0
    return lhs == rhs


def _s_prime(s: int, d: int, d_prime: int) -> int:
    scale = 1
    for p, _ in factorize(d):
        prof = profile(s, p)
        scale *= p ** (prof.e_p - nu(prof.rank_p, p))
    return d_prime * scale


def conjecture1_witness(s: int, d: int, n_max: int = 2000) -> DAdicWitness:
    """Construct (d', s') for odd d >= 3 and validate it for n = 1..n_max.

    d' is the rank modulo d when that is at most d, else its largest divisor
    not exceeding d; d' = 1 is tried if the first choice fails validation.
    """
    _check_s(s)
    if d < 3 or d % 2 == 0:
        raise PreconditionError(f"d must be an odd integer >= 3, got {d}")
    rd = period_and_rank(SeqParams(s, -1), d).rank
    assert rd is not None
    if rd <= d:
        first = rd
    else:
        first = max(q for q in range(1, d + 1) if rd % q == 0)
    terms = _terms(s, n_max + 1)
    for d_prime in dict.fromkeys((first, 1)):
        s_prime = _s_prime(s, d, d_prime)
        if all(witness_holds(s, d, d_prime, s_prime, n, terms[n]) for n in range(1, n_max + 1)):
            return DAdicWitness(d=d, s=s, d_prime=d_prime, s_prime=s_prime, validated_through=n_max)
    raise GenFibError(f"no witness validated for s={s}, d={d} up to n={n_max}")


def _lemma_terms(s: int, n: int) -> int:
    _check_s(s)
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    f_n = fib(SeqParams(s, -1), n)
    if f_n == 0:
        raise ZeroTermError(f"f_{n}({s},-1) = 0")
    return f_n


def lemma2_check(s: int, n: int, k: int) -> bool:
    """f_n | f_{kn} and f_n^2 | 2^(k-1) f_{kn}/f_n - k g_n^(k-1); the quotient is the integer K."""
    f_n = _lemma_terms(s, n)
    if k < 1:
        raise PreconditionError("k must be positive")
    params = SeqParams(s, -1)
    f_kn = fib(params, k * n)
    if f_kn % f_n:
        return False
    g_n = lucas(params, n)
    return ((2 ** (k - 1)) * (f_kn // f_n) - k * g_n ** (k - 1)) % (f_n * f_n) == 0


def lemma3_check(s: int, n: int, k: int) -> bool:
    """f_{kn} = k f_{n+1}^(k-1) f_n and f_{kn+1} = f_{n+1}^k, both mod f_n^2."""
    f_n = _lemma_terms(s, n)
    if k < 1:
        raise PreconditionError("k must be positive")
    params = SeqParams(s, -1)
    mod = f_n * f_n
    f_n1 = fib(params, n + 1)
    pair = fib_fast(params, k * n)
    return (pair.lo - k * f_n1 ** (k - 1) * f_n) % mod == 0 and (pair.hi - f_n1**k) % mod == 0
