"""Exact counts of additive and congruence relations on the divisor set.

The divisor set D_n is the sorted tuple of all divisors of n.  Counted
objects are always ordered tuples; the identities below (energy
decomposition, residue-class second moment) only hold for ordered counts.
"""

from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass

from . import factorcore
from .analytic import DELTA2
from .errors import DomainError
from .records import BoundCheckRecord, make_record

# Per-sum pair-count exponent: at most 2^(C_EXP * omega(n)) coprime pairs of
# divisors of a squarefree n share one fixed sum.
C_EXP = math.log(3) / math.log(2) - 2 / 3

# Squarefree additive-energy growth base and the derived shifted-triple base,
# sqrt(2 * ENERGY_BASE).
ENERGY_BASE = 7.8784716
SHIFTED_TRIPLE_BASE = 3.969502

# omega(e)/omega(n) threshold that balances the two halves of the energy
# bound; at this split 2^((2+C_EXP) + (1-C_EXP)(1-eta)) equals ENERGY_BASE.
ENERGY_SPLIT_ETA = 0.2702949686


@dataclass(frozen=True)
class EnergyDecomposition:
    """Pair sums d1+d2 grouped by (e, m) with e = gcd(d1+d2, n), m = sum/e.

    rows is sorted by (e, m); u is the number of ordered pairs in the cell.
    total_energy = sum of u^2 = additive energy of D_n.
    """

    n: int
    rows: tuple[tuple[int, int, int], ...]
    total_energy: int


@dataclass(frozen=True)
class ResidueProfile:
    """Divisor counts per residue class t = 1..q and their second moment."""

    n: int
    q: int
    counts: tuple[int, ...]
    h_value: int
    eta: float


def _divisor_tuple(n: int, cap: int | None = None) -> tuple[int, ...]:
    return factorcore.divisors(factorcore.factor(n), cap)


def _pair_sum_counts(divs: tuple[int, ...]) -> Counter:
    c: Counter = Counter()
    for d1 in divs:
        for d2 in divs:
            c[d1 + d2] += 1
    return c


def count_sum_triples(n: int, cap: int | None = None) -> int:
    """Ordered triples (d1, d2, d3) of divisors of n with d1 + d2 = d3."""
    divs = _divisor_tuple(n, cap)
    dset = set(divs)
    count = 0
    for d1 in divs:
        if d1 + 1 > n:
            break
        for d2 in divs:
            s = d1 + d2
            if s > n:
                break
            if s in dset:
                count += 1
    return count


def additive_energy(n: int, cap: int | None = None) -> int:
    """Ordered quadruples of divisors with d1 + d2 = d3 + d4."""
    sums = _pair_sum_counts(_divisor_tuple(n, cap))
    return sum(c * c for c in sums.values())


def rep_count(n: int, m: int, cap: int | None = None) -> int:
    """Ordered divisor pairs of n summing to m."""
    if m < 0:
        raise DomainError(f"rep_count: m must be >= 0, got {m}")
    divs = _divisor_tuple(n, cap)
    dset = set(divs)
    return sum(1 for d in divs if d < m and (m - d) in dset)


def shifted_count(n: int, m: int, cap: int | None = None) -> int:
    """Ordered triples with d1 + d2 = d3 + m; m may be negative."""
    divs = _divisor_tuple(n, cap)
    sums = _pair_sum_counts(divs)
    return sum(sums.get(d3 + m, 0) for d3 in divs)


def u_count(n: int, e: int, m: int, cap: int | None = None) -> int:
    """Pairs with d1 + d2 = m*e where e is the gcd of the sum with n."""
    if e < 1 or n % e != 0:
        raise DomainError(f"u_count: e = {e} does not divide n = {n}")
    if m < 1:
        raise DomainError(f"u_count: m must be >= 1, got {m}")
    if math.gcd(m * e, n) != e:
        raise DomainError(f"u_count: gcd({m}*{e}, {n}) != {e}")
    return rep_count(n, m * e, cap)


def energy_decomposition(n: int, cap: int | None = None) -> EnergyDecomposition:
    """Partition all tau(n)^2 ordered pair sums into (e, m) cells."""
    divs = _divisor_tuple(n, cap)
    sums = _pair_sum_counts(divs)
    rows = []
    for s, u in sums.items():
        e = math.gcd(s, n)
        rows.append((e, s // e, u))
    rows.sort()
    energy = sum(u * u for _, _, u in rows)
    return EnergyDecomposition(n, tuple(rows), energy)


# floor(e * 10^30) and its successor; e*d is never an integer, so an integer
# comparison against these brackets decides d2 < e*d1 exactly at any scale
# this library reaches.
_E_SCALE = 10**30
_E_FLOOR = 2718281828459045235360287471352


def _lt_e_times(d2: int, d1: int) -> bool:
    lhs = d2 * _E_SCALE
    if lhs <= d1 * _E_FLOOR:
        return True
    if lhs >= d1 * (_E_FLOOR + 1):
        return False
    raise RuntimeError("e-window comparison needs more digits")


def hooley_delta(n: int, cap: int | None = None) -> int:
    """Maximum number of divisors inside a window (x, e*x].

    The supremum over real windows is attained with the left edge just below
    a divisor d, so it equals the maximum over divisors d of the count of
    divisors in [d, e*d); e*d is irrational, making the half-open form exact.
    """
    divs = _divisor_tuple(n, cap)
    tau = len(divs)
    best = 0
    hi = 0
    for lo in range(tau):
        if hi < lo:
            hi = lo
        while hi < tau and _lt_e_times(divs[hi], divs[lo]):
            hi += 1
        best = max(best, hi - lo)
    return best


def residue_profile(n: int, q: int, cap: int | None = None) -> ResidueProfile:
    """Count divisors of n in each residue class mod q, plus the second moment.

    Requires gcd(n, q) = 1; classes are indexed t = 1..q with residue 0
    folded to q (it cannot occur under the coprimality hypothesis).
    """
    if q < 2:
        raise DomainError(f"residue_profile: q must be >= 2, got {q}")
    if math.gcd(n, q) != 1:
        raise DomainError(f"residue_profile: gcd({n}, {q}) != 1")
    divs = _divisor_tuple(n, cap)
    counts = [0] * q
    for d in divs:
        counts[(d - 1) % q] += 1  # slot t-1 holds class t, so q holds 0
    h = sum(c * c for c in counts)
    eta = math.log(q) / math.log(n) if n >= 2 else math.inf
    return ResidueProfile(n, q, tuple(counts), h, eta)


def exp_sum(n: int, theta: float, cap: int | None = None) -> complex:
    """Divisor exponential sum: sum over d | n of exp(2*pi*i*theta*d)."""
    divs = _divisor_tuple(n, cap)
    return sum(cmath.exp(2j * math.pi * theta * d) for d in divs)


def _require_squarefree(stats: factorcore.ArithStats, bound_id: str, n: int) -> None:
    if stats.v_max > 1:
        raise DomainError(f"{bound_id}: n = {n} is not squarefree")


def inequality_report(
    n: int, bound_id: str, cap: int | None = None, **params: object
) -> list[BoundCheckRecord]:
    """Evaluate one named divisor-relation bound at n and return its rows.

    Explicit bounds (corollary1, eq4.1, eq4.2) are asserted; growth-rate
    bounds (thm3a, thm3b, thm4, lemma6, corollary3) are recorded as ratios.
    """
    f = factorcore.factor(n)
    stats = factorcore.arith_stats(f)

    if bound_id == "corollary1":
        lhs = count_sum_triples(n, cap)
        return [make_record(bound_id, n, lhs, (2 - DELTA2) * math.log(stats.tau))]

    if bound_id == "eq4.1":
        _require_squarefree(stats, bound_id, n)
        per_e: dict[int, int] = {}
        for e, _, u in energy_decomposition(n, cap).rows:
            per_e[e] = per_e.get(e, 0) + u
        wanted = params.get("e")
        out = []
        for e in factorcore.divisors(f, cap):
            if wanted is not None and e != wanted:
                continue
            we = len(factorcore.factor(e).parts)
            log_rhs = stats.omega * math.log(3) + we * math.log(2 / 3)
            out.append(make_record(bound_id, n, per_e.get(e, 0), log_rhs, e=e))
        if wanted is not None and not out:
            raise DomainError(f"eq4.1: e = {wanted} does not divide {n}")
        return out

    if bound_id == "eq4.2":
        _require_squarefree(stats, bound_id, n)
        best: dict[int, tuple[int, int]] = {}
        for e, m, u in energy_decomposition(n, cap).rows:
            if e not in best or u > best[e][0]:
                best[e] = (u, m)
        out = []
        for e, (u, m) in sorted(best.items()):
            we = len(factorcore.factor(e).parts)
            log_rhs = (C_EXP * stats.omega + (1 - C_EXP) * we) * math.log(2)
            out.append(make_record(bound_id, n, u, log_rhs, e=e, m=m))
        return out

    if bound_id == "thm3a":
        _require_squarefree(stats, bound_id, n)
        lhs = additive_energy(n, cap)
        return [make_record(bound_id, n, lhs, stats.omega * math.log(ENERGY_BASE))]

    if bound_id == "thm3b":
        if n < 2:
            raise DomainError("thm3b: requires n >= 2")
        lhs = additive_energy(n, cap)
        log_rhs = 3 * math.log(stats.tau) - 0.5 * math.log(stats.omega2)
        return [make_record(bound_id, n, lhs, log_rhs)]

    if bound_id == "lemma6":
        if n < 2:
            raise DomainError("lemma6: requires n >= 2")
        lhs = hooley_delta(n, cap)
        log_rhs = math.log(stats.tau) - 0.5 * math.log(stats.omega2)
        return [make_record(bound_id, n, lhs, log_rhs)]

    if bound_id == "thm4":
        q = params.get("q")
        if not isinstance(q, int):
            raise DomainError("thm4: integer parameter q required")
        if n < 2 or q < 2:
            raise DomainError("thm4: requires n, q >= 2")
        profile = residue_profile(n, q, cap)
        rhs = (
            (stats.tau + stats.tau ** (2 - 4 * profile.eta))
            * stats.v_max
            * math.log(stats.tau) ** 1.5
        )
        return [
            make_record(bound_id, n, profile.h_value, math.log(rhs), q=q, eta=profile.eta)
        ]

    if bound_id == "corollary3":
        _require_squarefree(stats, bound_id, n)
        divs = factorcore.divisors(f, cap)
        sums = _pair_sum_counts(divs)
        shifts: Counter = Counter()
        for s, c in sums.items():
            for d3 in divs:
                shifts[s - d3] += c
        m_best, lhs = max(shifts.items(), key=lambda kv: (kv[1], -kv[0]))
        log_rhs = stats.omega * math.log(SHIFTED_TRIPLE_BASE)
        return [make_record(bound_id, n, lhs, log_rhs, m=m_best)]

    raise DomainError(f"unknown bound id: {bound_id}")
