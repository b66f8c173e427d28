"""Finite divisor mappings with bounded coordinate multiplicity.

A map table holds an explicit partial map g from ordered j-tuples of
pairwise coprime divisors of n to divisors of n, with g coprime to every
argument.  The regularity constant k of such a map is the largest number of
ways one coordinate can be varied (with everything else fixed) while hitting
a fixed value of g, or a fixed value of z*g; the strong constant additionally
bounds two-coordinate collisions of (g, z1*z2).
"""

from __future__ import annotations

import json
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping

from . import factorcore
from .analytic import DELTA2, delta_j
from .errors import DomainError, ResourceLimitError
from .records import BoundCheckRecord, make_record


@dataclass(frozen=True)
class MapTable:
    """Explicit j-ary divisor map: entries maps each domain tuple to g(tuple)."""

    n: int
    j: int
    entries: Mapping[tuple[int, ...], int]


@dataclass(frozen=True)
class RegularityReport:
    """Minimal multiplicity constants of a map table, with one witness each.

    k1/k2/k3 are exact maxima over the finite table; a witness is the
    (coordinate(s), fixed values, target(s), solutions) tuple realizing the
    maximum, so the table provably fails the respective condition at k-1.
    """

    k1: int
    k2: int
    k3: int | None
    k: int
    k_strong: int
    domain_regular: bool
    witness1: tuple | None = None
    witness2: tuple | None = None
    witness3: tuple | None = None


def map_violations(table: MapTable) -> list[str]:
    """Reasons the table breaks the domain contract; empty when clean."""
    problems = []
    n = table.n
    for tup, val in table.entries.items():
        if len(tup) != table.j:
            problems.append(f"tuple {tup} has arity {len(tup)}, expected {table.j}")
            continue
        for d in tup:
            if d < 1 or n % d != 0:
                problems.append(f"coordinate {d} of {tup} does not divide {n}")
        if val < 1 or n % val != 0:
            problems.append(f"value {val} at {tup} does not divide {n}")
        for a in range(len(tup)):
            for b in range(a + 1, len(tup)):
                if math.gcd(tup[a], tup[b]) != 1:
                    problems.append(f"coordinates of {tup} are not pairwise coprime")
        if any(math.gcd(val, d) != 1 for d in tup):
            problems.append(f"value {val} shares a factor with {tup}")
    return problems


def _max_with_witness(buckets: dict) -> tuple[int, tuple | None]:
    best = 0
    witness = None
    for key in sorted(buckets):
        sols = buckets[key]
        if len(sols) > best:
            best = len(sols)
            witness = (*key, tuple(sols))
    return best, witness


def check_regularity(table: MapTable) -> RegularityReport:
    """Exact minimal k for each condition by counting collisions in the table."""
    j = table.j
    c1: dict = defaultdict(list)
    c2: dict = defaultdict(list)
    c3: dict = defaultdict(list)
    for tup in sorted(table.entries):
        val = table.entries[tup]
        for i in range(j):
            rest = tup[:i] + tup[i + 1 :]
            c1[(i, rest, val)].append(tup[i])
            c2[(i, rest, tup[i] * val)].append(tup[i])
        for i1 in range(j):
            for i2 in range(i1 + 1, j):
                rest = tuple(tup[t] for t in range(j) if t != i1 and t != i2)
                c3[(i1, i2, rest, val, tup[i1] * tup[i2])].append((tup[i1], tup[i2]))
    k1, w1 = _max_with_witness(c1)
    k2, w2 = _max_with_witness(c2)
    if j >= 2:
        k3, w3 = _max_with_witness(c3)
    else:
        k3, w3 = None, None
    k = max(k1, k2)
    return RegularityReport(
        k1, k2, k3, k, max(k, k3 or 0), not map_violations(table), w1, w2, w3
    )


def f_value(table: MapTable) -> int:
    """Domain size |U_g|."""
    return len(table.entries)


def builtin_sum_map(n: int, cap: int | None = None) -> MapTable:
    """g(d1, d2) = d1 + d2 on coprime pairs whose sum divides n coprimely."""
    divs = factorcore.divisors(factorcore.factor(n), cap)
    entries = {}
    for d1 in divs:
        for d2 in divs:
            if math.gcd(d1, d2) != 1:
                continue
            s = d1 + d2
            if s <= n and n % s == 0 and math.gcd(s, d1 * d2) == 1:
                entries[(d1, d2)] = s
    return MapTable(n, 2, entries)


def builtin_successor_map(n: int, cap: int | None = None) -> MapTable:
    """g(t_i) = t_{i+1} on divisors coprime to their successor."""
    divs = factorcore.divisors(factorcore.factor(n), cap)
    entries = {}
    for i in range(len(divs) - 1):
        if math.gcd(divs[i], divs[i + 1]) == 1:
            entries[(divs[i],)] = divs[i + 1]
    return MapTable(n, 1, entries)


def builtin_midpoint_map(n: int, variant: str = "exact", cap: int | None = None) -> MapTable:
    """g(t_i, t_j) = t at the (floor) midpoint index, where coprimality allows.

    variant "exact" keeps only even i+j (value index (i+j)/2); variant
    "floor" uses index floor((i+j)/2) for every coprime pair.
    """
    if variant not in ("exact", "floor"):
        raise DomainError(f"midpoint variant must be 'exact' or 'floor', got {variant!r}")
    divs = factorcore.divisors(factorcore.factor(n), cap)
    tau = len(divs)
    entries = {}
    for i in range(1, tau + 1):
        for jdx in range(1, tau + 1):
            a, b = divs[i - 1], divs[jdx - 1]
            if math.gcd(a, b) != 1:
                continue
            if variant == "exact" and (i + jdx) % 2 != 0:
                continue
            val = divs[(i + jdx) // 2 - 1]
            if math.gcd(val, a) == 1 and math.gcd(val, b) == 1:
                entries[(a, b)] = val
    return MapTable(n, 2, entries)


BUILTIN_KINDS = ("sum", "successor", "midpoint-exact", "midpoint-floor")


def build_builtin(kind: str, n: int, cap: int | None = None) -> MapTable:
    if kind == "sum":
        return builtin_sum_map(n, cap)
    if kind == "successor":
        return builtin_successor_map(n, cap)
    if kind == "midpoint-exact":
        return builtin_midpoint_map(n, "exact", cap)
    if kind == "midpoint-floor":
        return builtin_midpoint_map(n, "floor", cap)
    raise DomainError(f"unknown builtin map kind: {kind!r}")


MAP_BOUND_IDS = ("thm1a", "thm1b", "thm2a", "thm2b", "c2", "corollary2")


def bound_check(
    table: MapTable, bound_id: str, reg: RegularityReport | None = None
) -> BoundCheckRecord:
    """Compare |U_g| against one named domain-size bound at the table's own k."""
    if reg is None:
        reg = check_regularity(table)
    f = factorcore.factor(table.n)
    stats = factorcore.arith_stats(f)
    j, k = table.j, reg.k
    lhs = f_value(table)
    kap = factorcore.kappa(f, j)

    def log_or_ninf(x: float) -> float:
        return math.log(x) if x > 0 else -math.inf

    if bound_id == "thm1a":
        log_rhs = log_or_ninf(k) + (1 - delta_j(j)) * math.log(kap)
        return make_record(bound_id, table.n, lhs, log_rhs, j=j, k=k)

    if bound_id == "thm1b":
        if j != 2:
            raise DomainError("thm1b: arity-2 tables only")
        log_rhs = log_or_ninf(k) + (1 - DELTA2) * math.log(kap)
        return make_record(bound_id, table.n, lhs, log_rhs, j=j, k=k)

    if bound_id == "thm2a":
        if stats.v_max > 1:
            raise DomainError(f"thm2a: n = {table.n} is not squarefree")
        ks = reg.k_strong
        log_rhs = log_or_ninf(ks) + stats.omega * math.log((j + 2) / 2 ** (2 / (j + 2)))
        return make_record(bound_id, table.n, lhs, log_rhs, j=j, k_strong=ks)

    if bound_id == "thm2b":
        log_rhs = log_or_ninf(k) + sum(
            math.log((j + 1) * v ** (j / (j + 1))) for _, v in f.parts
        )
        return make_record(bound_id, table.n, lhs, log_rhs, j=j, k=k)

    if bound_id == "c2":
        log_rhs = math.log(j * k + 1) + math.log(kap) - math.log(j * stats.v_max + 1)
        return make_record(bound_id, table.n, lhs, log_rhs, j=j, k=k)

    if bound_id == "corollary2":
        if table.n < 2:
            raise DomainError("corollary2: requires n >= 2")
        log_rhs = log_or_ninf(k) + math.log(kap) - math.log(stats.big_omega)
        return make_record(bound_id, table.n, lhs, log_rhs, j=j, k=k)

    raise DomainError(f"unknown bound id: {bound_id}")


def exact_E(n: int, j: int, k: int, guard: int = 12, cap: int | None = None) -> int:
    """Exact maximum domain size over all k-regular arity-j maps on D_n.

    Depth-first search over (tuple, value) assignments in a fixed order,
    maintaining per-condition collision counters; branches die as soon as a
    counter would pass k or the remaining tuples cannot beat the incumbent.
    Only feasible for tiny n, hence the tau^j guard.
    """
    if j < 1 or k < 1:
        raise DomainError(f"exact_E: j and k must be >= 1, got j={j}, k={k}")
    f = factorcore.factor(n)
    tau = factorcore.arith_stats(f).tau
    if tau**j > guard:
        raise ResourceLimitError(f"exact_E: tau({n})^{j} = {tau**j} exceeds guard {guard}")
    divs = factorcore.divisors(f, cap)
    cands = list(factorcore.coprime_tuples(f, j))
    options = [
        [d for d in divs if all(math.gcd(d, c) == 1 for c in tup)] for tup in cands
    ]
    total = len(cands)
    c1: dict = defaultdict(int)
    c2: dict = defaultdict(int)
    best = 0

    def dfs(idx: int, size: int) -> None:
        nonlocal best
        if size + (total - idx) <= best:
            return
        if idx == total:
            best = size
            return
        tup = cands[idx]
        for val in options[idx]:
            keys1 = [(i, tup[:i] + tup[i + 1 :], val) for i in range(j)]
            keys2 = [(i, tup[:i] + tup[i + 1 :], tup[i] * val) for i in range(j)]
            if any(c1[key] >= k for key in keys1) or any(c2[key] >= k for key in keys2):
                continue
            for key in keys1:
                c1[key] += 1
            for key in keys2:
                c2[key] += 1
            dfs(idx + 1, size + 1)
            for key in keys1:
                c1[key] -= 1
            for key in keys2:
                c2[key] -= 1
        dfs(idx + 1, size)

    dfs(0, 0)
    return best


def map_to_json(table: MapTable) -> str:
    """Serialize as {"n", "j", "entries": [[d1..dj, value], ...]}, sorted."""
    rows = [[*tup, table.entries[tup]] for tup in sorted(table.entries)]
    return json.dumps({"n": table.n, "j": table.j, "entries": rows})


def map_from_json(text: str) -> MapTable:
    try:
        obj = json.loads(text)
        n = obj["n"]
        j = obj["j"]
        raw = obj["entries"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise DomainError(f"bad map table JSON: {exc}") from exc
    if not isinstance(n, int) or not isinstance(j, int) or n < 1 or j < 1:
        raise DomainError("bad map table JSON: n and j must be positive integers")
    entries = {}
    for row in raw:
        if (
            not isinstance(row, list)
            or len(row) != j + 1
            or not all(isinstance(x, int) for x in row)
        ):
            raise DomainError(f"bad map table row: {row!r}")
        entries[tuple(row[:j])] = row[j]
    return MapTable(n, j, entries)
