"""Generalized Fibonacci sequences f_n(s, t): ranks, periods, valuations, tail floors."""

from .errors import (
    GenFibError,
    InfiniteValuationError,
    NonContractingError,
    PreconditionError,
    RankUndefinedError,
    UndecidedFloorError,
    ZeroTermError,
)
from .mod_rank import RankPeriodReport, period_and_rank, rank_bound_check, rank_composed, rank_exists, rank_sweep, residues
from .quad_field import (
    PrimeField,
    PrimeFieldElem,
    QuadExtElem,
    QuadExtField,
    factorize,
    is_prime,
    legendre,
    mult_order,
    rank_via_order,
    rank_via_order_general,
    sqrt_mod,
)
from .seq_core import BigPair, SeqParams, addition_identity_check, fib, fib_fast, fib_iter, gcd_index_check, lucas
from .valuations import (
    DAdicWitness,
    ValuationProfile,
    conjecture1_witness,
    lemma2_check,
    lemma3_check,
    nu,
    nu_composite,
    nu_fib_closed,
    nu_prime_power,
    profile,
)
from .zeta_tail import TailBracket, closed_form_rhs, lemma5_check, tail_bracket, tail_floor, verify_family

__version__ = "0.1.0"
