"""The uniqueness criterion, threshold degrees, and field windows.

Evaluates the tree recursion's fixed point and derivative criterion across
parameters, shows the degree monotonicity inside the unit square, locates
the non-uniqueness field window for fixed (beta, gamma, d), and writes a
classified phase map to CSV.
"""

import csv
import math

from twospin import SpinParams, field_window, first_nonunique_degree, \
    outside_square_degrees, phase_grid, uniqueness_check
from twospin.uniqueness import always_unique_bound

# The symmetric point beta = gamma = 1/2: |f'| at the fixed point is d/3.
print("beta = gamma = 0.5, mu = 1:")
for d in (2, 3, 4):
    rep = uniqueness_check(SpinParams(0.5, 0.5), d)
    print(f"  d={d}: x_hat={rep.x_hat:.6f}  |f'|={rep.derivative_magnitude:.6f}"
          f"  unique={rep.unique}")
print("  first non-unique degree:",
      first_nonunique_degree(SpinParams(0.5, 0.5), 20).degree)

# Below (1+sqrt(bg))/(1-sqrt(bg)) the system is unique for EVERY field.
beta, gamma = 0.3, 0.6
print(f"\nbeta={beta}, gamma={gamma}:")
print("  always-unique degree bound:", always_unique_bound(beta, gamma))
for mu in (1e-4, 1.0, 1e4):
    rep = uniqueness_check(SpinParams(beta, gamma, mu), 3)
    print(f"  d=3, mu={mu:g}: |f'|={rep.derivative_magnitude:.4f} unique={rep.unique}")

# Above the bound, non-uniqueness occupies a field window (mu1, mu2).
d = 10
mu1, mu2 = field_window(beta, gamma, d)
print(f"  d={d}: non-unique exactly for mu in ({mu1:.6g}, {mu2:.6g})")
for mu in (mu1 * 0.9, mu1 * 1.1, mu2 * 0.9, mu2 * 1.1):
    rep = uniqueness_check(SpinParams(beta, gamma, mu), d)
    print(f"    mu={mu:.6g}: unique={rep.unique}")

# Window endpoints scale exponentially in d: log-slope sanity check (not a
# tested tolerance; the polynomial factor in front is small next to the
# exponential term).
print("\nlog-slopes of the window endpoints in d (beta=0.2, gamma=0.5):")
print(f"  log(gamma) = {math.log(0.5):+.4f}, -log(beta) = {-math.log(0.2):+.4f}")
prev = None
for d in (20, 40, 80, 160):
    lo, hi = field_window(0.2, 0.5, d)
    if prev is not None:
        d0, lo0, hi0 = prev
        print(f"  d {d0:3d}->{d:3d}: slope(log mu1) = "
              f"{(math.log(lo) - math.log(lo0)) / (d - d0):+.4f}, "
          f"slope(log mu2) = {(math.log(hi) - math.log(hi0)) / (d - d0):+.4f}")
    prev = (d, lo, hi)

# For 0 < beta < 1 < gamma the ceiling degrees control the hard region.
print("\ndegree plans for gamma just above 1:")
for b, g in [(0.5, 1.0001), (0.3, 1.0001), (0.1, 1.00005)]:
    plan = outside_square_degrees(b, g)
    print(f"  beta={b}, gamma={g}: delta'={plan.delta_prime} "
          f"delta*={plan.delta_star} hard-region={plan.in_hard_region}")

# A coarse classified map of the unit square at fixed degree.
steps = 9
betas = [0.1 + 0.8 * i / (steps - 1) for i in range(steps)]
gammas = list(betas)
rows = list(phase_grid(betas, gammas, mu=1.0, d=12))
with open("phase_map_demo.csv", "w", encoding="ascii") as fh:
    writer = csv.writer(fh)
    writer.writerow(["beta", "gamma", "mu", "d", "region", "x_hat", "deriv_mag"])
    for row in rows:
        writer.writerow([row[k] for k in
                         ("beta", "gamma", "mu", "d", "region", "x_hat",
                          "deriv_mag")])
print(f"\nwrote {len(rows)} classified grid points to phase_map_demo.csv")
symbols = {"uniqueness": ".", "ferromagnetic": "F"}
print("map at d=12 (rows beta, cols gamma; '#' marks non-uniqueness):")
for i in range(steps):
    line = "".join(
        symbols.get(rows[i * steps + j]["region"],
                    "#" if "non-uniqueness" in rows[i * steps + j]["region"]
                    else "?")
        for j in range(steps))
    print("  " + line)
