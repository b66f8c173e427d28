"""Additive energy of divisor sets: the count of coincidences d1+d2 = d3+d4.

The energy decomposes exactly over cells (e, m) with e = gcd(d1+d2, n): the
number of pairs in each cell is U(e, m) and the energy is the sum of U^2.
"""

import math

import divrel as dr

print("Small exact values (ordered quadruples):")
for n in (2, 6, 12, 30, 210):
    print(f"  E(D_{n}) = {dr.additive_energy(n)}")

print("\nDecomposition of n = 6 into (e, m, U) cells; sum of U^2 gives 32:")
for e, m, u in dr.energy_decomposition(6).rows:
    print(f"  e={e} m={m} U={u}")

print("\nEnergy against the tau(n)^3 / sqrt(Omega2(n)) envelope (ratio only;")
print("the envelope carries an unspecified constant):")
print(f"  {'n':>6} {'energy':>10} {'envelope':>12} {'ratio':>7}")
for n in (60, 360, 2520, 5040, 9240):
    (rec,) = dr.inequality_report(n, "thm3b")
    envelope = math.exp(rec.log_rhs)
    print(f"  {n:>6} {rec.lhs:>10} {envelope:>12.1f} {rec.lhs / envelope:>7.3f}")

print("\nFor squarefree n the energy grows at most like 7.8784716^omega:")
print(f"  {'n':>6} {'omega':>5} {'energy':>8} {'base^omega':>11} {'ratio':>7}")
for n in (30, 210, 2310, 4290):
    if dr.arith_stats(dr.factor(n)).v_max > 1:
        continue
    (rec,) = dr.inequality_report(n, "thm3a")
    omega = dr.arith_stats(dr.factor(n)).omega
    rhs = math.exp(rec.log_rhs)
    print(f"  {n:>6} {omega:>5} {rec.lhs:>8} {rhs:>11.1f} {rec.lhs / rhs:>7.3f}")

print("\nShifted triples d1 + d2 = d3 + m, maximized over the shift m:")
for n in (30, 210, 2310):
    (rec,) = dr.inequality_report(n, "corollary3")
    m = dict(rec.params)["m"]
    print(f"  n={n}: max G = {rec.lhs} at m = {m}, 3.969502^omega = "
          f"{math.exp(rec.log_rhs):.1f}")
