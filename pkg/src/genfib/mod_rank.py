"""Residues of f_n(s, t) modulo m: period, preperiod, rank, and their composition."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterable

from .errors import PreconditionError, RankUndefinedError
from .quad_field import factorize, require_odd_prime
from .seq_core import SeqParams

__all__ = [
    "RankPeriodReport",
    "residues",
    "period_and_rank",
    "rank_exists",
    "rank_composed",
    "rank_bound_check",
    "rank_sweep",
]


@dataclass(frozen=True)
class RankPeriodReport:
    modulus: int
    rank: int | None
    period: int
    preperiod: int

    @property
    def rank_exists(self) -> bool:
        return self.rank is not None


def _check_modulus(m: int) -> None:
    if m < 2:
        raise PreconditionError(f"modulus must be at least 2, got {m}")


def residues(params: SeqParams, m: int, count: int) -> list[int]:
    _check_modulus(m)
    s, t = params.s % m, params.t % m
    out = []
    a, b = 0, 1 % m
    for _ in range(count):
        out.append(a)
        a, b = b, (s * b + t * a) % m
    return out


def period_and_rank(params: SeqParams, m: int) -> RankPeriodReport:
    """Cycle of the state (f_n, f_{n+1}) mod m, and the rank if the zero set is exactly r*Z.

    At most m^2 distinct states exist, so the loop ends within m^2 + 1 steps.
    """
    _check_modulus(m)
    s, t = params.s % m, params.t % m
    seen: dict[tuple[int, int], int] = {}
    seq: list[int] = []
    a, b = 0, 1 % m
    n = 0
    while (a, b) not in seen:
        seen[(a, b)] = n
        seq.append(a)
        a, b = b, (s * b + t * a) % m
        n += 1
    pre = seen[(a, b)]
    period = n - pre

    window = pre + 2 * period
    while len(seq) <= window:
        seq.append(seq[pre + (len(seq) - pre) % period])
    zeros = [i for i in range(1, window + 1) if seq[i] == 0]
    rank = None
    if zeros:
        c = zeros[0]
        # m | f_y iff c | y, checked over one preperiod plus two full periods
        if zeros == list(range(c, window + 1, c)):
            rank = c
    return RankPeriodReport(modulus=m, rank=rank, period=period, preperiod=pre)


def rank_exists(params: SeqParams, m: int) -> bool:
    """gcd(m, t) == 1.

    Exact for prime powers. For composite m this is only sufficient:
    period_and_rank may still find a rank when the residues modulo some
    prime factor of gcd(m, t) vanish from f_2 on, e.g. (s, t) = (-3, -3), m = 6.
    """
    _check_modulus(m)
    return gcd(m, params.t) == 1


def rank_composed(params: SeqParams, m: int) -> int:
    """lcm of the ranks modulo the prime-power factors of m."""
    _check_modulus(m)
    ranks = []
    for p, a in factorize(m):
        q = p**a
        r = period_and_rank(params, q).rank
        if r is None:
            raise RankUndefinedError(f"rank modulo {q} does not exist for {params}")
        ranks.append(r)
    return lcm(*ranks)


def rank_bound_check(params: SeqParams, p: int, k: int) -> bool:
    """Whether r(p^k) <= p^k + 1."""
    require_odd_prime(p)
    if k < 1:
        raise PreconditionError("k must be positive")
    if params.t % p == 0:
        raise RankUndefinedError(f"{p} divides t={params.t}")
    q = p**k
    r = period_and_rank(params, q).rank
    if r is None:
        raise RankUndefinedError(f"rank modulo {q} does not exist for {params}")
    return r <= q + 1


def rank_sweep(t: int, p: int, s_values: Iterable[int]) -> list[tuple[int, int]]:
    """(s, r(p)) for each s.

    Only s mod p matters, and f_n(-s, t) = (-1)^(n+1) f_n(s, t) has the same
    zeros, so each residue pair {s, p - s} is computed once.
    """
    require_odd_prime(p)
    if t % p == 0:
        raise RankUndefinedError(f"{p} divides t={t}")
    cache: dict[int, int] = {}
    rows = []
    for s in s_values:
        key = s % p
        key = min(key, p - key) if key else 0
        if key not in cache:
            r = period_and_rank(SeqParams(key, t), p).rank
            assert r is not None
            cache[key] = r
        rows.append((s, cache[key]))
    return rows
