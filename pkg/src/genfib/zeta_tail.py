"""Rigorous floors of inverse reciprocal tails, floor(1 / sum_{k>=n} f_{rk}^-w).

Tails are enclosed by exact rationals. The lower end is a partial sum; the
upper end adds a geometric majorant for the remainder. The majorant needs a
bound rho on every later ratio q_k = f_{rk} / f_{r(k+1)}. The subsequence
u_k = f_{rk} obeys u_{k+1} = P u_k - Q u_{k-1} with P = g_r and Q = (-t)^r,
so q_{k+1} = phi(q_k) with phi(q) = 1 / (P - Q q). Any interval that holds
the last two ratios and is mapped into itself by phi bounds all later ones.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import floor, isqrt
from typing import Iterable

from .errors import GenFibError, NonContractingError, PreconditionError, UndecidedFloorError, ZeroTermError
from .seq_core import SeqParams, fib, fib_list, lucas

__all__ = [
    "FAMILIES",
    "TailBracket",
    "FamilyCell",
    "tail_bracket",
    "tail_floor",
    "closed_form_rhs",
    "check_family_params",
    "default_grid",
    "verify_family",
    "lemma5_check",
]

FAMILIES = ("thm15", "thm16", "thm17", "conj2")
DEFAULT_TERM_CAP = 1 << 14

# denominator scale for the rational bounds on the limiting ratio
_SQRT_SCALE = 1 << 64


@dataclass(frozen=True)
class TailBracket:
    lower: Fraction
    upper: Fraction
    terms_used: int
    ratio_bound: Fraction


def _check_common(r: int, n: int, w: int) -> None:
    if r < 1 or n < 1:
        raise PreconditionError("r and n must be positive")
    if w not in (1, 2):
        raise PreconditionError(f"w must be 1 or 2, got {w}")


def _phi_invariant(P: int, Q: int, lo: Fraction, hi: Fraction) -> bool:
    if lo < 0 or hi >= 1 or lo > hi:
        return False
    if P - Q * lo <= 0 or P - Q * hi <= 0:
        return False
    # phi is monotone on [lo, hi], so the endpoint images bound the whole image
    for q in (lo, hi):
        img = 1 / (P - Q * q)
        if not lo <= img <= hi:
            return False
    return True


def _limit_bounds(P: int, Q: int) -> tuple[Fraction, Fraction] | None:
    """Rationals bracketing 1/alpha, alpha the larger root of x^2 - P x + Q."""
    disc = P * P - 4 * Q
    if disc <= 0 or P <= 0:
        return None
    K = _SQRT_SCALE
    root_lo = isqrt(disc * K * K)  # root_lo / K <= sqrt(disc) < (root_lo + 1) / K
    return Fraction(2 * K, P * K + root_lo + 1), Fraction(2 * K, P * K + root_lo)


def _ratio_bound(P: int, Q: int, q_prev: Fraction, q_last: Fraction) -> Fraction:
    a, b = min(q_prev, q_last), max(q_prev, q_last)
    candidates = [(a, b)]
    lim = _limit_bounds(P, Q)
    if lim is not None:
        candidates.append((Fraction(0), max(b, lim[1])))
        candidates.append((min(a, lim[0]), max(b, lim[1])))
    for lo, hi in candidates:
        if _phi_invariant(P, Q, lo, hi):
            return hi
    raise NonContractingError(f"tail ratios near {float(b):.6g} could not be certified below 1")


def tail_bracket(params: SeqParams, r: int, n: int, w: int, terms: int) -> TailBracket:
    """Enclose sum_{k>=n} 1/f_{rk}^w using `terms` exact terms plus a geometric remainder."""
    _check_common(r, n, w)
    if terms < 2:
        raise PreconditionError("terms must be at least 2")
    end = n + terms  # first omitted index
    seq = fib_list(params, r * end + 1)
    u = [seq[r * k] for k in range(n, end + 1)]
    for k, v in zip(range(n, end + 1), u):
        if v == 0:
            raise ZeroTermError(f"f_{r * k}{params} = 0")
        if v < 0:
            raise PreconditionError(f"f_{r * k}{params} = {v} is negative")
    lower = sum((Fraction(1, v**w) for v in u[:-1]), Fraction(0))
    P, Q = lucas(params, r), (-params.t) ** r
    rho = _ratio_bound(P, Q, Fraction(u[-3], u[-2]), Fraction(u[-2], u[-1]))
    upper = lower + Fraction(1, u[-1] ** w) / (1 - rho**w)
    return TailBracket(lower=lower, upper=upper, terms_used=terms, ratio_bound=rho)


def tail_floor(
    params: SeqParams,
    r: int,
    n: int,
    w: int,
    start_terms: int = 8,
    max_terms: int = DEFAULT_TERM_CAP,
) -> int:
    """floor(1 / tail), doubling the term count until both bracket ends agree."""
    terms = max(2, min(start_terms, max_terms))
    while True:
        br = tail_bracket(params, r, n, w, terms)
        hi_floor = floor(1 / br.lower)
        lo_floor = floor(1 / br.upper)
        if lo_floor == hi_floor:
            return lo_floor
        if terms * 2 > max_terms:
            raise UndecidedFloorError(
                f"floor undecided between {lo_floor} and {hi_floor} after {terms} terms",
                lo_floor,
                hi_floor,
                terms,
            )
        terms *= 2


def _fib_signed(n: int) -> int:
    """Classical F_n for any integer n, using F_{-n} = (-1)^(n+1) F_n."""
    if n >= 0:
        return fib(SeqParams(1, 1), n)
    m = -n
    return fib(SeqParams(1, 1), m) * (1 if m % 2 else -1)


def check_family_params(params: SeqParams, r: int, n: int, w: int, family: str) -> None:
    """Raise PreconditionError unless (params, r, n, w) lies in the family's stated range."""
    _check_common(r, n, w)
    s, t = params.s, params.t
    if family == "thm15":
        if (s, t) != (1, 1) or r != 1:
            raise PreconditionError("thm15 covers the Fibonacci numbers only: s = t = 1, r = 1")
    elif family == "thm16":
        if t != 1 or r != 1 or s < 1:
            raise PreconditionError("thm16 needs t = 1, r = 1, s >= 1")
    elif family == "thm17":
        if not s >= t >= 1:
            raise PreconditionError("thm17 needs s >= t >= 1")
        if w == 2 and t != 1:
            raise PreconditionError("thm17 with w = 2 needs t = 1")
    elif family == "conj2":
        if not (t <= -1 and s > -t):
            raise PreconditionError("conj2 needs recurrence coefficient t <= -1 with s > -t")
        if (s, t) == (2, -1):
            raise PreconditionError("conj2 excludes (s, t) = (2, -1)")
        if w == 2 and t != -1:
            raise PreconditionError("conj2 with w = 2 needs t = -1")
    else:
        raise PreconditionError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def closed_form_rhs(params: SeqParams, r: int, n: int, w: int, family: str) -> int:
    """Predicted value of floor(1 / tail) for the given family.

    `params` always holds the recurrence coefficients actually used, so the
    conj2 family takes t <= -1.
    """
    check_family_params(params, r, n, w, family)
    even = lambda x: 1 if x % 2 == 0 else 0  # noqa: E731
    if family == "thm15":
        if w == 1:
            return _fib_signed(n - 2) - (1 - even(n))
        return _fib_signed(n - 1) * _fib_signed(n) - even(n)
    if family == "thm16":
        f_n, f_prev = fib(params, n), fib(params, n - 1)
        if w == 1:
            return f_n - f_prev - (1 - even(n))
        return params.s * f_n * f_prev - even(n)
    f_rn, f_prev = fib(params, r * n), fib(params, r * (n - 1))
    if family == "thm17":
        return f_rn**w - f_prev**w - even(r * (n - 1))
    return f_rn**w - f_prev**w - 1


@dataclass(frozen=True)
class FamilyCell:
    family: str
    s: int
    t: int
    r: int
    n: int
    w: int
    lhs: int | None
    rhs: int | None
    holds: bool | None
    error: str | None = None

    @property
    def key(self) -> tuple[int, int, int, int, int]:
        return (self.s, self.t, self.r, self.n, self.w)


Cell = tuple[SeqParams, int, int, int]


def default_grid(family: str) -> list[Cell]:
    """The parameter grids used by the verification suite."""
    cells: list[Cell] = []
    if family == "thm15":
        cells = [(SeqParams(1, 1), 1, n, w) for w in (1, 2) for n in range(1, 21)]
    elif family == "thm16":
        cells = [(SeqParams(s, 1), 1, n, w) for s in range(1, 7) for n in range(1, 7) for w in (1, 2)]
    elif family == "thm17":
        for s in range(1, 7):
            for t in range(1, s + 1):
                for r in range(1, 4):
                    for n in range(1, 7):
                        cells.append((SeqParams(s, t), r, n, 1))
                        if t == 1:
                            cells.append((SeqParams(s, t), r, n, 2))
    elif family == "conj2":
        for s in range(3, 9):
            for t in range(1, s):
                for r in range(1, 4):
                    for n in range(2, 7):
                        cells.append((SeqParams(s, -t), r, n, 1))
                        if t == 1:
                            cells.append((SeqParams(s, -t), r, n, 2))
    else:
        raise PreconditionError(f"unknown family {family!r}")
    return cells


def _run_cell(args: tuple[str, SeqParams, int, int, int]) -> FamilyCell:
    family, params, r, n, w = args
    base = dict(family=family, s=params.s, t=params.t, r=r, n=n, w=w)
    try:
        rhs = closed_form_rhs(params, r, n, w, family)
        lhs = tail_floor(params, r, n, w)
    except GenFibError as exc:
        return FamilyCell(**base, lhs=None, rhs=None, holds=None, error=f"{type(exc).__name__}: {exc}")
    return FamilyCell(**base, lhs=lhs, rhs=rhs, holds=lhs == rhs)


def verify_family(family: str, cells: Iterable[Cell] | None = None, workers: int | None = None) -> list[FamilyCell]:
    """Compare tail_floor with closed_form_rhs on every cell; errored cells are kept, not dropped.

    `workers` defaults to the GENFIB_WORKERS environment variable (1 if unset).
    """
    if family not in FAMILIES:
        raise PreconditionError(f"unknown family {family!r}")
    cell_list = sorted(default_grid(family) if cells is None else cells, key=lambda c: (c[0].s, c[0].t, c[1], c[2], c[3]))
    jobs = [(family, *c) for c in cell_list]
    if workers is None:
        workers = int(os.environ.get("GENFIB_WORKERS", "1"))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_cell, jobs, chunksize=8))
    return [_run_cell(j) for j in jobs]


def lemma5_check(params: SeqParams, r: int, n: int, m: int) -> bool:
    """f_{rn} f_{r(n+m-1)} - f_{r(n-1)} f_{r(n+m)} == (-t)^(r(n-1)) f_r f_{rm}."""
    if min(r, n, m) < 1:
        raise PreconditionError("r, n, m must be positive")
    f = lambda k: fib(params, k)  # noqa: E731
    lhs = f(r * n) * f(r * (n + m - 1)) - f(r * (n - 1)) * f(r * (n + m))
    return lhs == (-params.t) ** (r * (n - 1)) * f(r) * f(r * m)
