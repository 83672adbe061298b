"""Verification suites driven by ``genfib verify``.

Each suite yields CaseResult rows. Rows with ``asserted=False`` are logged
observations (e.g. conj2 cells outside the proven grid) and never count as failures.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable, Iterator

from .mod_rank import period_and_rank, rank_bound_check, rank_composed
from .quad_field import is_prime, legendre, rank_via_order
from .seq_core import SeqParams, addition_identity_check, fib_fast, fib_iter, fib_list, gcd_index_check, lucas_list
from .valuations import conjecture1_witness, lemma2_check, lemma3_check, nu, nu_fib_closed
from .zeta_tail import FAMILIES, default_grid, lemma5_check, verify_family

SUITES = ("lemmas", "rank-order", "valuation", "zeta", "all")


@dataclass(frozen=True)
class CaseResult:
    suite: str
    case: str
    passed: bool
    asserted: bool = True
    detail: str = ""

    @property
    def status(self) -> str:
        if not self.asserted:
            return "LOG-OK" if self.passed else "LOG-VIOLATION"
        return "PASS" if self.passed else "FAIL"


def odd_primes_below(n: int) -> list[int]:
    return [p for p in range(3, n) if is_prime(p)]


def lemmas_suite(nmax: int = 1000) -> Iterator[CaseResult]:
    for s in range(2, 13):
        params = SeqParams(s, -1)
        f, g = fib_list(params, nmax + 1), lucas_list(params, nmax + 1)
        bad = [n for n in range(1, nmax + 1) if gcd(f[n], g[n]) > 2]
        yield CaseResult("lemmas", f"gcd(f,g)<=2 s={s} n=1..{nmax}", not bad, detail=f"first failure n={bad[0]}" if bad else "")
    for s in range(2, 9):
        for name, check in (("lemma2", lemma2_check), ("lemma3", lemma3_check)):
            bad = [(n, k) for n in range(1, 13) for k in range(1, 9) if not check(s, n, k)]
            yield CaseResult("lemmas", f"{name} s={s} n=1..12 k=1..8", not bad, detail=str(bad[:3]) if bad else "")
    for s in range(-5, 6):
        for t in range(-5, 6):
            params = SeqParams(s, t)
            bad = [
                (r, n, m)
                for r in range(1, 7)
                for n in range(1, 7)
                for m in range(1, 7)
                if not lemma5_check(params, r, n, m)
            ]
            yield CaseResult("lemmas", f"lemma5 {params} r,n,m=1..6", not bad, detail=str(bad[:3]) if bad else "")
    for s, t in ((1, 1), (3, -1), (2, 3), (5, -2), (4, -1), (1, -3)):
        params = SeqParams(s, t)
        gbad = [(m, n) for m in range(1, 41) for n in range(1, 41) if not gcd_index_check(params, m, n)]
        yield CaseResult("lemmas", f"gcd-index {params} m,n=1..40", not gbad, detail=str(gbad[:3]) if gbad else "")
        abad = [(m, n) for m in range(1, 31) for n in range(1, 31) if not addition_identity_check(params, m, n)]
        yield CaseResult("lemmas", f"addition {params} m,n=1..30", not abad, detail=str(abad[:3]) if abad else "")
    for s, t in ((1, 1), (3, -1), (2, 3), (5, -2), (1, -1), (0, 1), (-3, 2)):
        params = SeqParams(s, t)
        seq = fib_list(params, 10_001)
        bad = [n for n in range(0, 10_001, 37) if fib_fast(params, n).lo != seq[n]]
        bad += [n for n in (0, 1, 2, 9_999, 10_000) if fib_fast(params, n).lo != fib_iter(params, n)]
        yield CaseResult("lemmas", f"fast-vs-iter {params} n<=10000", not bad, detail=str(bad[:3]) if bad else "")


def rank_order_suite(pmax: int = 200) -> Iterator[CaseResult]:
    for p in odd_primes_below(pmax):
        mismatches, divides_bad, ramified_bad, bound_bad = [], [], [], []
        for s in range(1, p):
            naive = period_and_rank(SeqParams(s, -1), p).rank
            if rank_via_order(s, p) != naive:
                mismatches.append(s)
            D = s * s - 4
            if D % p == 0:
                if naive != p:
                    ramified_bad.append(s)
            elif ((p - legendre(D, p)) // 2) % naive:
                divides_bad.append(s)
            if naive > p:
                bound_bad.append(s)
        yield CaseResult("rank-order", f"order-rank p={p} s=1..{p - 1}", not mismatches, detail=f"s={mismatches[:5]}" if mismatches else "")
        yield CaseResult("rank-order", f"rank-divides p={p}", not (ramified_bad or divides_bad or bound_bad), detail=str((ramified_bad, divides_bad, bound_bad)) if (ramified_bad or divides_bad or bound_bad) else "")
    for s in range(2, 11):
        for p in (3, 5, 7):
            for k in (1, 2, 3):
                yield CaseResult("rank-order", f"power-bound s={s} t=-1 p={p} k={k}", rank_bound_check(SeqParams(s, -1), p, k))
    # the bound is only proven where the rank exists; off t = -1 it is logged
    for s, t in ((1, 1), (2, 3), (1, 2), (3, 1)):
        for p in (3, 5, 7):
            if t % p == 0:
                continue
            for k in (1, 2, 3):
                q = p**k
                r = period_and_rank(SeqParams(s, t), q).rank
                yield CaseResult(
                    "rank-order", f"power-bound s={s} t={t} p={p} k={k}", r is not None and r <= q + 1, asserted=False, detail=f"r({q})={r}"
                )
    for s, t in ((1, 1), (3, -1), (4, -1), (2, 3)):
        params = SeqParams(s, t)
        bad = [m for m in range(2, 301) if gcd(m, t) == 1 and rank_composed(params, m) != period_and_rank(params, m).rank]
        yield CaseResult("rank-order", f"composition {params} m=2..300", not bad, detail=f"m={bad[:5]}" if bad else "")


def valuation_suite(nmax: int = 3000, dmax: int = 99, witness_nmax: int = 2000) -> Iterator[CaseResult]:
    for p in (3, 5, 7, 11, 13):
        for s in range(2, 13):
            f = fib_list(SeqParams(s, -1), nmax + 1)
            bad = [n for n in range(1, nmax + 1) if nu_fib_closed(s, p, n) != nu(f[n], p)]
            yield CaseResult("valuation", f"closed-valuation p={p} s={s} n=1..{nmax}", not bad, detail=f"n={bad[:5]}" if bad else "")
    for d in range(3, dmax + 1, 2):
        for s in range(2, 11):
            try:
                w = conjecture1_witness(s, d, witness_nmax)
            except ArithmeticError as exc:
                yield CaseResult("valuation", f"witness d={d} s={s}", False, detail=str(exc))
            else:
                yield CaseResult(
                    "valuation",
                    f"witness d={d} s={s}",
                    True,
                    detail=f"d'={w.d_prime} s'={w.s_prime} n<={w.validated_through}",
                )


def zeta_suite(families: tuple[str, ...] = FAMILIES, smax: int = 8) -> Iterator[CaseResult]:
    for family in families:
        for cell in verify_family(family):
            key = f"{family} s={cell.s} t={cell.t} r={cell.r} n={cell.n} w={cell.w}"
            if cell.error is not None:
                yield CaseResult("zeta", key, False, detail=cell.error)
            else:
                yield CaseResult("zeta", key, bool(cell.holds), detail=f"{cell.lhs} {cell.rhs}")
    if "conj2" in families:
        yield from conj2_frontier(smax)


def conj2_frontier(smax: int = 8) -> Iterator[CaseResult]:
    """Logged-only conj2 cells outside the asserted grid (n = 1, and s up to smax)."""
    asserted = set(default_grid("conj2"))
    cells = []
    for s in range(3, smax + 1):
        for t in range(1, s):
            for r in range(1, 4):
                for n in range(1, 7):
                    for w in (1, 2) if t == 1 else (1,):
                        cell = (SeqParams(s, -t), r, n, w)
                        if cell not in asserted:
                            cells.append(cell)
    for cell in verify_family("conj2", cells):
        key = f"conj2 s={cell.s} t={cell.t} r={cell.r} n={cell.n} w={cell.w}"
        detail = cell.error if cell.error is not None else f"{cell.lhs} {cell.rhs}"
        yield CaseResult("zeta", key, bool(cell.holds), asserted=False, detail=detail)


def run_suite(name: str, **overrides: object) -> Iterator[CaseResult]:
    table: dict[str, Callable[..., Iterator[CaseResult]]] = {
        "lemmas": lemmas_suite,
        "rank-order": rank_order_suite,
        "valuation": valuation_suite,
        "zeta": zeta_suite,
    }
    if name == "all":
        for sub in ("lemmas", "rank-order", "valuation", "zeta"):
            yield from run_suite(sub, **overrides)
        return
    if name not in table:
        raise KeyError(name)
    fn = table[name]
    accepted = fn.__code__.co_varnames[: fn.__code__.co_argcount]
    yield from fn(**{k: v for k, v in overrides.items() if k in accepted and v is not None})
