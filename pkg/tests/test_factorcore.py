"""Factorization, divisor enumeration, and multiplicative statistics."""

import math
import random
from fractions import Fraction

import pytest

from divrel import (
    DomainError,
    ResourceLimitError,
    arith_stats,
    coprime_tuples,
    divisors,
    factor,
    kappa,
    signature,
    t_weight,
)


def brute_coprime_count(n: int, j: int) -> int:
    """Independent oracle: nested loops over divisors with pairwise gcd tests."""
    divs = divisors(factor(n))
    count = 0
    stack = [(0, ())]
    while stack:
        depth, tup = stack.pop()
        if depth == j:
            count += 1
            continue
        for d in divs:
            if all(math.gcd(d, other) == 1 for other in tup):
                stack.append((depth + 1, tup + (d,)))
    return count


def test_factor_examples():
    assert factor(12).parts == ((2, 2), (3, 1))
    assert factor(1).parts == ()
    assert factor(720).parts == ((2, 4), (3, 2), (5, 1))


def test_factor_rejects_nonpositive():
    with pytest.raises(DomainError):
        factor(0)
    with pytest.raises(DomainError):
        factor(-12)


def test_factor_product_and_primality_random():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randrange(1, 10**6)
        f = factor(n)
        prod = 1
        for p, v in f.parts:
            assert v >= 1
            assert all(p % q != 0 for q in range(2, math.isqrt(p) + 1))
            prod *= p**v
        assert prod == n
        assert list(f.parts) == sorted(f.parts)


def test_factor_large_inputs_use_rho():
    p, q = 999999937, 998244353
    assert factor(p * q).parts == ((q, 1), (p, 1))
    m = 2**61 - 1  # Mersenne prime
    assert factor(m).parts == ((m, 1),)
    assert factor(10**12).parts == ((2, 12), (5, 12))


def test_divisors_examples():
    assert divisors(factor(6)) == (1, 2, 3, 6)
    assert divisors(factor(1)) == (1,)
    assert divisors(factor(12)) == (1, 2, 3, 4, 6, 12)


def test_divisors_cap():
    with pytest.raises(ResourceLimitError):
        divisors(factor(720720), cap=100)


def as_tuple(stats):
    return (stats.tau, stats.omega, stats.big_omega, stats.omega2, stats.v_max)


def test_arith_stats_examples():
    assert as_tuple(arith_stats(factor(12))) == (6, 2, 3, 5, 2)
    assert as_tuple(arith_stats(factor(1))) == (1, 0, 0, 0, 0)
    assert as_tuple(arith_stats(factor(8))) == (4, 1, 3, 9, 3)


def test_arith_stats_cauchy_schwarz():
    for n in range(2, 2000):
        s = arith_stats(factor(n))
        assert s.omega2 * s.omega >= s.big_omega**2


@pytest.mark.parametrize(
    "n,j,expect", [(12, 1, 6), (12, 2, 15), (4, 3, 7)]
)
def test_kappa_examples(n, j, expect):
    assert kappa(factor(n), j) == expect
    assert brute_coprime_count(n, j) == expect


def test_kappa_matches_brute_force_small_range():
    for n in range(1, 120):
        f = factor(n)
        for j in (1, 2, 3):
            assert kappa(f, j) == brute_coprime_count(n, j)


def test_kappa_equals_tau_at_j1():
    for n in range(1, 500):
        f = factor(n)
        assert kappa(f, 1) == arith_stats(f).tau


def test_signature_examples():
    assert signature(factor(12)) == (2, 1)
    assert signature(factor(30)) == (1, 1, 1)
    assert signature(factor(1)) == ()


def test_signature_prime_relabeling_invariance():
    assert signature(factor(2**2 * 3)) == signature(factor(5**2 * 7))
    assert signature(factor(2 * 3**4 * 5**2)) == signature(factor(11**4 * 13**2 * 17))


def test_coprime_tuples_examples():
    assert list(coprime_tuples(factor(1), 3)) == [(1, 1, 1)]
    assert list(coprime_tuples(factor(5), 2)) == [(1, 1), (5, 1), (1, 5)]
    assert len(list(coprime_tuples(factor(12), 2))) == 15


def test_coprime_tuples_are_valid_and_distinct():
    for n in (30, 36, 64, 210, 720):
        f = factor(n)
        for j in (1, 2, 3):
            seen = set()
            for tup in coprime_tuples(f, j):
                assert len(tup) == j
                for d in tup:
                    assert n % d == 0
                for a in range(j):
                    for b in range(a + 1, j):
                        assert math.gcd(tup[a], tup[b]) == 1
                seen.add(tup)
            assert len(seen) == kappa(f, j)


def test_coprime_tuples_count_equals_kappa():
    for n in range(1, 300):
        f = factor(n)
        for j in (1, 2, 3):
            assert sum(1 for _ in coprime_tuples(f, j)) == kappa(f, j)


def test_coprime_tuples_deterministic_order():
    f = factor(12)
    first = list(coprime_tuples(f, 2))
    assert first[0] == (1, 1)
    assert first == list(coprime_tuples(f, 2))
    # per prime: skip first, then coordinate 1..j taking exponent 1..v
    assert list(coprime_tuples(factor(4), 2)) == [
        (1, 1), (2, 1), (4, 1), (1, 2), (1, 4),
    ]


def test_coprime_tuples_cap():
    with pytest.raises(ResourceLimitError):
        list(coprime_tuples(factor(720720), 3, cap=1000))


def test_t_weight_examples():
    f = factor(12)
    assert t_weight(f, 6) == Fraction(1, 2)
    assert t_weight(f, 1) == 1
    total = sum(
        t_weight(f, d1) * t_weight(f, d2) for d1, d2 in coprime_tuples(f, 2)
    )
    assert total == 9  # (2+1)^omega(12)


def test_t_weight_rejects_non_divisor():
    with pytest.raises(DomainError):
        t_weight(factor(12), 5)


def test_t_weight_sum_identity():
    # sum over coprime j-tuples of prod T(d_i) equals (j+1)^omega(n), exactly
    for n in range(1, 2001):
        f = factor(n)
        omega = len(f.parts)
        weights = {d: t_weight(f, d) for d in divisors(f)}
        for j in (1, 2):
            total = Fraction(0)
            for tup in coprime_tuples(f, j):
                term = Fraction(1)
                for d in tup:
                    term *= weights[d]
                total += term
            assert total == (j + 1) ** omega


def test_power_mean_strict_inequality():
    # (j+1) * v^(j/(j+1)) < j*v + 1 for the tested grid
    for j in range(1, 7):
        for v in range(2, 101):
            assert (j + 1) * v ** (j / (j + 1)) < j * v + 1
