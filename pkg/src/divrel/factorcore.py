"""Integer factorization, divisor enumeration, and multiplicative statistics.

Everything downstream (relation counts, regular mappings, concentration
bounds) starts from the exact factorization produced here.  All counts are
exact Python integers; only the smallest-prime-factor sieve uses numpy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import DomainError, ResourceLimitError

# Size caps are configuration values, not hard constants; every consumer can
# pass its own cap.
DEFAULT_DIVISOR_CAP = 10**6
DEFAULT_TUPLE_CAP = 10**8

# Factorizations at or above this bound switch from the sieve to Pollard rho.
SPF_CEILING = 10**7

# Deterministic Miller-Rabin witness set, valid far beyond 2**64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_spf_table: np.ndarray | None = None


@dataclass(frozen=True)
class Factorization:
    """n together with its prime/exponent parts, primes ascending.

    n = 1 is the empty product: parts == ().
    """

    n: int
    parts: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ArithStats:
    """The divisor-count and exponent statistics of one integer.

    tau       number of divisors, prod (v+1)
    omega     number of distinct primes
    big_omega sum of exponents
    omega2    sum of squared exponents
    v_max     largest exponent (0 for n = 1)
    """

    tau: int
    omega: int
    big_omega: int
    omega2: int
    v_max: int


def _sieve(limit: int) -> np.ndarray:
    """Smallest-prime-factor table covering [0, limit], grown lazily."""
    global _spf_table
    if _spf_table is None or len(_spf_table) <= limit:
        size = max(1 << 16, 1 << limit.bit_length())
        size = min(max(size, limit + 1), SPF_CEILING)
        table = np.arange(size, dtype=np.int64)
        for p in range(2, math.isqrt(size - 1) + 1):
            if table[p] == p:
                np.minimum(table[p * p :: p], p, out=table[p * p :: p])
        _spf_table = table
    return _spf_table


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _rho_split(n: int) -> int:
    """Deterministic Pollard rho (Brent cycle), n an odd composite > 1."""
    for c in range(1, 10_000):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise RuntimeError(f"rho failed to split {n}")


def _factor_into(m: int, counts: dict[int, int]) -> None:
    if m == 1:
        return
    if m < SPF_CEILING:
        table = _sieve(m)
        while m > 1:
            p = int(table[m])
            counts[p] = counts.get(p, 0) + 1
            m //= p
        return
    if _is_prime(m):
        counts[m] = counts.get(m, 0) + 1
        return
    d = _rho_split(m)
    _factor_into(d, counts)
    _factor_into(m // d, counts)


def factor(n: int) -> Factorization:
    """Factor n >= 1 exactly.

    Uses a smallest-prime-factor sieve below 10**7 and deterministic
    Miller-Rabin plus Pollard rho above, so word-sized inputs are fine.
    """
    if n < 1:
        raise DomainError(f"factor: n must be a positive integer, got {n}")
    counts: dict[int, int] = {}
    m = n
    # Strip tiny primes first so rho never sees even input.
    for p in (2, 3, 5):
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    _factor_into(m, counts)
    return Factorization(n, tuple(sorted(counts.items())))


def arith_stats(f: Factorization) -> ArithStats:
    tau = 1
    big = 0
    sq = 0
    vmax = 0
    for _, v in f.parts:
        tau *= v + 1
        big += v
        sq += v * v
        vmax = max(vmax, v)
    return ArithStats(tau, len(f.parts), big, sq, vmax)


def divisors(f: Factorization, cap: int | None = None) -> tuple[int, ...]:
    """All divisors of n in increasing order (length tau(n))."""
    limit = DEFAULT_DIVISOR_CAP if cap is None else cap
    if arith_stats(f).tau > limit:
        raise ResourceLimitError(
            f"divisors: tau({f.n}) = {arith_stats(f).tau} exceeds cap {limit}"
        )
    divs = [1]
    for p, v in f.parts:
        powers = [p**e for e in range(1, v + 1)]
        divs += [d * q for q in powers for d in divs]
    divs.sort()
    return tuple(divs)


def kappa(f: Factorization, j: int) -> int:
    """Number of ordered j-tuples of pairwise coprime divisors: prod (j*v+1)."""
    if j < 1:
        raise DomainError(f"kappa: j must be >= 1, got {j}")
    out = 1
    for _, v in f.parts:
        out *= j * v + 1
    return out


def signature(f: Factorization) -> tuple[int, ...]:
    """Exponent multiset sorted non-increasingly; blind to which primes occur."""
    return tuple(sorted((v for _, v in f.parts), reverse=True))


def coprime_tuples(
    f: Factorization, j: int, cap: int | None = None
) -> Iterator[tuple[int, ...]]:
    """Stream every ordered j-tuple of pairwise coprime divisors of n.

    Exactly kappa(f, j) tuples are produced.  Each prime power p^v of n is
    assigned to at most one coordinate; enumeration order per prime is:
    unassigned first, then coordinate 1..j with exponent 1..v.
    """
    if j < 1:
        raise DomainError(f"coprime_tuples: j must be >= 1, got {j}")
    limit = DEFAULT_TUPLE_CAP if cap is None else cap
    total = kappa(f, j)
    if total > limit:
        raise ResourceLimitError(
            f"coprime_tuples: kappa_{j}({f.n}) = {total} exceeds cap {limit}"
        )
    parts = f.parts

    def rec(idx: int, coords: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if idx == len(parts):
            yield coords
            return
        p, v = parts[idx]
        yield from rec(idx + 1, coords)
        for i in range(j):
            pe = 1
            for _ in range(v):
                pe *= p
                yield from rec(idx + 1, coords[:i] + (coords[i] * pe,) + coords[i + 1 :])

    return rec(0, (1,) * j)


def t_weight(f: Factorization, d: int) -> Fraction:
    """Reciprocal-exponent weight: prod over primes p | d of 1/v where p^v || n.

    Summing prod_i t_weight(d_i) over the coprime j-tuples gives exactly
    (j+1)^omega(n), which the tests exploit as an exact rational oracle.
    """
    if d < 1 or f.n % d != 0:
        raise DomainError(f"t_weight: {d} does not divide {f.n}")
    w = Fraction(1)
    for p, v in f.parts:
        if d % p == 0:
            w *= Fraction(1, v)
    return w
