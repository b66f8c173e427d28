"""Additive and congruence relation counts on divisor sets."""

import cmath
import math
import random

import pytest

from divrel import (
    C_EXP,
    ENERGY_BASE,
    ENERGY_SPLIT_ETA,
    SHIFTED_TRIPLE_BASE,
    DomainError,
    additive_energy,
    arith_stats,
    count_sum_triples,
    divisors,
    energy_decomposition,
    exp_sum,
    factor,
    hooley_delta,
    inequality_report,
    rep_count,
    residue_profile,
    shifted_count,
    u_count,
)


def divisor_list(n):
    return divisors(factor(n))


def brute_energy(n: int) -> int:
    """Quadruple-loop oracle for the additive energy."""
    divs = divisor_list(n)
    count = 0
    for d1 in divs:
        for d2 in divs:
            for d3 in divs:
                for d4 in divs:
                    if d1 + d2 == d3 + d4:
                        count += 1
    return count


def brute_triples(n: int) -> int:
    divs = divisor_list(n)
    return sum(
        1
        for d1 in divs
        for d2 in divs
        for d3 in divs
        if d1 + d2 == d3
    )


def brute_hooley(n: int) -> int:
    """Window oracle anchored at the right edge: count in (d/e, d]."""
    divs = divisor_list(n)
    return max(
        sum(1 for dp in divs if d / math.e < dp <= d) for d in divs
    )


def test_count_sum_triples_examples():
    assert count_sum_triples(6) == 4
    assert count_sum_triples(1) == 0
    assert count_sum_triples(2) == 1


def test_count_sum_triples_brute_force():
    for n in range(1, 200):
        assert count_sum_triples(n) == brute_triples(n)


def test_additive_energy_examples():
    assert additive_energy(2) == 6
    assert additive_energy(6) == 32
    assert additive_energy(1) == 1


def test_additive_energy_brute_force():
    for n in (1, 2, 6, 12, 30, 36, 60):
        assert additive_energy(n) == brute_energy(n)


def test_rep_count_examples():
    assert rep_count(6, 4) == 3
    assert rep_count(6, 13) == 0
    for n in (1, 5, 12, 100):
        assert rep_count(n, 2) >= 1


def test_shifted_count_examples():
    assert shifted_count(6, 0) == 4
    assert shifted_count(6, 1) == 8
    assert shifted_count(1, 1) == 1


def test_shifted_count_matches_triples():
    for n in range(1, 2001):
        assert shifted_count(n, 0) == count_sum_triples(n)


def test_u_count_examples():
    assert u_count(6, 1, 5) == 2
    assert u_count(6, 2, 2) == 3
    with pytest.raises(DomainError):
        u_count(6, 1, 4)
    with pytest.raises(DomainError):
        u_count(6, 4, 1)


def test_energy_decomposition_examples():
    assert energy_decomposition(6).total_energy == 32
    assert energy_decomposition(1).rows == ((1, 2, 1),)
    assert sum(u for _, _, u in energy_decomposition(2).rows) == 4


def test_energy_decomposition_rows_are_valid():
    for n in range(1, 300):
        dec = energy_decomposition(n)
        for e, m, u in dec.rows:
            assert n % e == 0
            assert math.gcd(m * e, n) == e
            assert u >= 1
            assert u_count(n, e, m) == u


def test_pair_partition_identity():
    # sum of all U(e, m) cells recovers tau(n)^2
    for n in range(1, 2001):
        dec = energy_decomposition(n)
        tau = arith_stats(factor(n)).tau
        assert sum(u for _, _, u in dec.rows) == tau * tau


def test_energy_identity_small():
    for n in range(1, 500):
        assert energy_decomposition(n).total_energy == additive_energy(n)


def test_hooley_delta_examples():
    assert hooley_delta(1) == 1
    assert hooley_delta(12) == 3
    for p in (3, 5, 7, 97, 9973):
        assert hooley_delta(p) == 1
    assert hooley_delta(2) == 2  # window [1, e) holds both divisors


def test_hooley_delta_brute_force():
    for n in range(1, 3000):
        assert hooley_delta(n) == brute_hooley(n)


def test_residue_profile_examples():
    prof = residue_profile(12, 5)
    assert prof.counts == (2, 2, 1, 1, 0)
    assert prof.h_value == 10
    for n in (7, 12, 100):
        q = n + 1
        prof = residue_profile(n, q)
        assert prof.h_value == arith_stats(factor(n)).tau
    with pytest.raises(DomainError):
        residue_profile(6, 3)
    with pytest.raises(DomainError):
        residue_profile(6, 1)


def test_residue_profile_invariants():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randrange(2, 3000)
        q = rng.randrange(2, 50)
        if math.gcd(n, q) != 1:
            continue
        prof = residue_profile(n, q)
        tau = arith_stats(factor(n)).tau
        assert sum(prof.counts) == tau
        assert prof.h_value == sum(c * c for c in prof.counts)
        assert prof.h_value * q >= tau * tau  # second moment lower bound
        brute = sum(
            1
            for d1 in divisor_list(n)
            for d2 in divisor_list(n)
            if (d1 - d2) % q == 0
        )
        assert prof.h_value == brute


def test_exp_sum_examples():
    assert exp_sum(12, 0) == pytest.approx(6 + 0j)
    assert exp_sum(12, 0.5) == pytest.approx(2 + 0j, abs=1e-9)
    for theta in (0.1, 0.37, 1.9):
        w = exp_sum(60, theta)
        assert abs(w) <= arith_stats(factor(60)).tau + 1e-9
        assert cmath.isclose(w.conjugate(), exp_sum(60, -theta), abs_tol=1e-9)


def test_corollary1_report_example():
    (rec,) = inequality_report(6, "corollary1")
    assert rec.lhs == 4
    assert math.exp(rec.log_rhs) == pytest.approx(4 ** (2 - 0.045072))
    assert math.exp(rec.log_rhs) == pytest.approx(15.031, abs=1e-3)
    assert rec.passed and rec.asserted


def test_corollary1_holds_small_range():
    for n in range(1, 2001):
        (rec,) = inequality_report(n, "corollary1")
        assert rec.passed


def test_eq41_report_example():
    recs = inequality_report(30, "eq4.1", e=1)
    assert len(recs) == 1
    assert math.exp(recs[0].log_rhs) == pytest.approx(27.0)
    assert recs[0].passed


def test_eq41_eq42_require_squarefree():
    with pytest.raises(DomainError):
        inequality_report(12, "eq4.1")
    with pytest.raises(DomainError):
        inequality_report(12, "eq4.2")


def test_lemma6_report_example():
    (rec,) = inequality_report(12, "lemma6")
    assert rec.lhs == 3
    assert math.exp(rec.log_rhs) == pytest.approx(6 / math.sqrt(5))
    assert rec.passed  # recorded, not asserted
    assert not rec.asserted


def test_thm4_report_records_ratio():
    (rec,) = inequality_report(35, "thm4", q=4)
    assert rec.lhs == residue_profile(35, 4).h_value
    assert math.isfinite(rec.log_rhs)


def test_corollary3_report_matches_max_shift():
    for n in (6, 30, 210):
        (rec,) = inequality_report(n, "corollary3")
        m = dict(rec.params)["m"]
        assert rec.lhs == shifted_count(n, m)
        assert rec.lhs >= count_sum_triples(n)  # m = 0 is one candidate


def test_unknown_bound_id():
    with pytest.raises(DomainError):
        inequality_report(6, "no-such-bound")


def test_energy_constant_consistency():
    # the split eta balances both halves of the energy bound
    exponent = (2 + C_EXP) + (1 - C_EXP) * (1 - ENERGY_SPLIT_ETA)
    assert 2**exponent == pytest.approx(ENERGY_BASE, abs=1e-6)
    assert math.sqrt(2 * ENERGY_BASE) == pytest.approx(SHIFTED_TRIPLE_BASE, abs=1e-5)
