from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genfib.errors import PreconditionError
from genfib.mod_rank import period_and_rank
from genfib.quad_field import (
    PrimeField,
    QuadExtField,
    factorize,
    is_prime,
    legendre,
    mult_order,
    rank_via_order,
    rank_via_order_general,
    sqrt_mod,
)
from genfib.seq_core import SeqParams
from oracles import primes_below

ODD_PRIMES = [p for p in primes_below(200) if p > 2]


def test_is_prime_matches_sieve():
    small = set(primes_below(20_000))
    assert all(is_prime(n) == (n in small) for n in range(20_000))


def test_is_prime_known_large():
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7
    assert not is_prime((2**31 - 1) * (2**31 + 11))
    with pytest.raises(PreconditionError):
        is_prime(2**64 + 13)


def test_legendre_examples():
    assert all(legendre(1, p) == 1 for p in ODD_PRIMES)
    assert 3 * 3 % 7 == 2 and legendre(2, 7) == 1
    assert (-3) % 31 in {x * x % 31 for x in range(1, 31)}
    assert legendre(-3, 31) == 1


@pytest.mark.parametrize("p", ODD_PRIMES[:25])
def test_legendre_exhaustive(p):
    squares = {x * x % p for x in range(1, p)}
    for a in range(-p, 2 * p):
        expected = 0 if a % p == 0 else (1 if a % p in squares else -1)
        assert legendre(a, p) == expected


def test_legendre_rejects_bad_modulus():
    for p in (2, 9, 15, 1):
        with pytest.raises(PreconditionError):
            legendre(3, p)


def test_sqrt_mod_examples():
    assert sqrt_mod(0, 7) == 0
    assert sqrt_mod(2, 7) == 3
    assert all(x * x % 7 != 3 for x in range(7))
    assert sqrt_mod(3, 7) is None
    with pytest.raises(PreconditionError):
        sqrt_mod(4, 21)


@pytest.mark.parametrize("p", ODD_PRIMES)
def test_sqrt_mod_exhaustive(p):
    roots: dict[int, list[int]] = {}
    for x in range(p):
        roots.setdefault(x * x % p, []).append(x)
    for a in range(p):
        got = sqrt_mod(a, p)
        if a in roots:
            assert got == min(roots[a])
        else:
            assert got is None


@pytest.mark.parametrize("p", [998244353, 2**61 - 1, 1000000007, 65537])
def test_sqrt_mod_large(p):
    for a in range(2, 200):
        r = sqrt_mod(a, p)
        if r is None:
            assert legendre(a, p) == -1
        else:
            assert r * r % p == a and r <= p - r


def test_factorize_examples():
    assert factorize(1) == []
    assert factorize(32) == [(2, 5)]
    assert factorize(30) == [(2, 1), (3, 1), (5, 1)]


def test_factorize_large():
    m61 = 2**61 - 1
    assert factorize(m61 * (2**31 - 1)) == [(2147483647, 1), (m61, 1)]
    assert factorize(m61**2) == [(m61, 2)]
    assert factorize(1000003 * 1000033) == [(1000003, 1), (1000033, 1)]
    assert factorize(2**64) == [(2, 64)]


@given(st.integers(1, 10**15))
@settings(max_examples=200, deadline=None)
def test_factorize_reconstructs(n):
    fac = factorize(n)
    assert prod(p**e for p, e in fac) == n
    assert [p for p, _ in fac] == sorted({p for p, _ in fac})
    assert all(e >= 1 and is_prime(p) for p, e in fac)


def test_mult_order_examples():
    F = PrimeField(7)
    assert mult_order(F(1), 6) == 1
    assert [pow(2, k, 7) for k in (1, 2, 3)] == [2, 4, 1]
    assert mult_order(F(2), 6) == 3
    assert sorted(pow(3, k, 7) for k in range(1, 7)) == [1, 2, 3, 4, 5, 6]
    assert mult_order(F(3), 6) == 6


def test_mult_order_rejects_bad_exponent():
    with pytest.raises(PreconditionError):
        mult_order(PrimeField(7)(3), 4)
    with pytest.raises(PreconditionError):
        mult_order(PrimeField(7)(0), 6)


@pytest.mark.parametrize("p", ODD_PRIMES[:15])
def test_mult_order_by_enumeration(p):
    F = PrimeField(p)
    for x in range(1, p):
        order = next(k for k in range(1, p) if pow(x, k, p) == 1)
        assert mult_order(F(x), p - 1) == order


def _nonresidue(p):
    return next(a for a in range(2, p) if legendre(a, p) == -1)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_quad_order_by_enumeration(p):
    K = QuadExtField(p, _nonresidue(p))
    for a in range(p):
        for b in range(p):
            if a == b == 0:
                continue
            x = K(a, b)
            acc, k = x, 1
            while not acc.is_one():
                acc, k = acc * x, k + 1
            d = mult_order(x, p * p - 1)
            assert d == k
            for q, _ in factorize(d):
                assert not (x ** (d // q)).is_one()


def test_quad_field_needs_nonresidue():
    with pytest.raises(PreconditionError):
        QuadExtField(7, 2)


elems = st.tuples(st.integers(0, 10**6), st.integers(0, 10**6))


@given(elems, elems, elems)
@settings(max_examples=150, deadline=None)
def test_quad_field_axioms(x, y, z):
    K = QuadExtField(1_000_003, _nonresidue(1_000_003))
    a, b, c = K(*x), K(*y), K(*z)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    if not a.is_zero():
        assert (a * a.inverse()).is_one()
        assert (a ** -3) * (a**3) == K.one()


def test_omega_relation_and_frobenius():
    p, d = 31, _nonresidue(31)
    K = QuadExtField(p, d)
    assert K.omega * K.omega == K(d)
    for s in range(1, p):
        D = s * s - 4
        if legendre(D, p) != -1:
            continue
        L = QuadExtField(p, D)
        half = pow(2, -1, p)
        X, Y = L(s * half, half), L(s * half, -half)
        assert X**p == Y
        assert X * Y == L.one()
        assert (X ** (p + 1)).is_one()


@pytest.mark.parametrize("p", ODD_PRIMES[:20])
def test_split_roots_multiply_to_one(p):
    F = PrimeField(p)
    half = pow(2, -1, p)
    for s in range(1, p):
        w = sqrt_mod(s * s - 4, p)
        if w is None or w == 0:
            continue
        X, Y = F((s + w) * half), F((s - w) * half)
        assert (X * Y).is_one()
        assert X * X - F(s) * X + F(1) == F(0)


def test_rank_via_order_examples():
    assert rank_via_order(1, 31) == 3
    assert rank_via_order(2, 31) == 31
    assert rank_via_order(5, 31) == 8
    with pytest.raises(PreconditionError):
        rank_via_order(3, 2)


@pytest.mark.parametrize("p", ODD_PRIMES[:12])
def test_rank_via_order_matches_naive(p):
    for s in range(0, p):
        assert rank_via_order(s, p) == period_and_rank(SeqParams(s, -1), p).rank


def test_rank_via_order_general_examples():
    # Fibonacci mod 7: 0 1 1 2 3 5 1 6 0 -> rank 8; F_10 = 55 is the first multiple of 11
    assert rank_via_order_general(SeqParams(1, 1), 7) == 8
    assert rank_via_order_general(SeqParams(1, 1), 11) == 10
    # 5 | D = 5 for (3, -1): handled by the p | D rule instead
    with pytest.raises(PreconditionError):
        rank_via_order_general(SeqParams(3, -1), 5)
    assert period_and_rank(SeqParams(3, -1), 5).rank == 5
    with pytest.raises(PreconditionError):
        rank_via_order_general(SeqParams(1, 3), 3)


@pytest.mark.parametrize("p", ODD_PRIMES[:15])
def test_rank_via_order_general_matches_naive(p):
    for s in range(p):
        for t in range(1, p):
            params = SeqParams(s, t)
            if params.discriminant % p == 0:
                continue
            assert rank_via_order_general(params, p) == period_and_rank(params, p).rank


def test_general_reduces_to_t_minus_one():
    for p in ODD_PRIMES[:20]:
        for s in range(p):
            if (s * s - 4) % p:
                assert rank_via_order_general(SeqParams(s, -1), p) == rank_via_order(s, p)
