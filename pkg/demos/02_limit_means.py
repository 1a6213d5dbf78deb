"""
Mean number of simple solutions
===============================

Exact limit means for small periods, and how fast the finite-n mean
approaches them.
"""
from fractions import Fraction

from periodic_ca import theory

# limit means over a small grid of periods
for sigma in range(1, 5):
    row = [str(theory.limit_mean(tau, sigma)) for tau in range(1, 9)]
    print(f"sigma={sigma}: " + "  ".join(f"{v:>6}" for v in row))

# probability of at least one solution with given periods, as n grows without bound
for tau, sigma in [(1, 1), (2, 2), (3, 3), (2, 4)]:
    print(f"tau={tau} sigma={sigma}: 1 - exp(-mean) = {theory.limit_existence_prob(tau, sigma):.6f}")

# the finite-n mean approaches the limit at rate 1/n
lam = theory.limit_mean(2, 2)
for n in (10, 20, 50, 100, 200, 400):
    gap = theory.finite_n_mean(n, 2, 2) - lam
    print(f"n={n:<4} mean={float(theory.finite_n_mean(n, 2, 2)):.6f}  n*gap={float(n * gap):+.4f}")

# a brute-force check of the counting formula: tiles by (states, lag)
census = theory.brute_force_tile_census(4, 2, 2)
print(census)
print({s: theory.simple_tile_count(4, 2, 2, s) for s in theory.simple_sizes(2, 2, 4)})

# the smallest temporal period has a proper limit law
cdf = [theory.limit_cdf_min_temporal(2, y) for y in range(1, 11)]
print("limit CDF, sigma=2:", [round(c, 4) for c in cdf])
total = sum((theory.limit_mean(t, 2) for t in range(1, 11)), Fraction(0))
print(f"sum of means up to 10: {total} = {float(total):.4f}")
