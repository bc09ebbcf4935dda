"""
Cap discrepancy, Stolarsky's principle and energies
===================================================

The L2 cap discrepancy of a point set equals, up to a constant c_d, the gap
between the average distance on the sphere and the average distance between
the points.  This script computes both sides independently.
"""

import numpy as np

from montlab import discrepancy as disc
from montlab.gegenbauer import GegenbauerContext
from montlab.pointsets import GeneratorSpec, generate
from montlab.profiles import ProfileFunction

ps = generate(GeneratorSpec("uniform", 100, seed=2))
print("J_2 =", disc.distance_integral(2))

# direct definition: Monte Carlo in the cap centre, exact in the cap size
d2, se = disc.cap_discrepancy_direct(ps, 200_000, seed=1)
gap = disc.distance_integral(2) - disc.mean_pairwise_distance(ps)
print(f"D^2 direct = {d2:.6e} +- {se:.1e},  distance gap = {gap:.6e},  ratio = {gap / d2:.4f}")

# the constant, once from random sets and once from the degree-one coefficients
cal = disc.calibrate_stolarsky_constant(2, samples=100_000, seed=0)
print("calibrated c_2 = %.4f +- %.4f (spread %.2f%%)" % (cal.c, cal.stderr, 100 * cal.spread))
print("degree-one value:", disc.stolarsky_constant_exact(GegenbauerContext(2, 4)))

# spectral discrepancy for one cap size, with the bound on what degrees > L add
ctx = GegenbauerContext(2, 128)
res = disc.discrepancy_l2(ctx, ProfileFunction.cap(0.5), ps, "spectral", 128)
mc = disc.discrepancy_l2(ctx, ProfileFunction.cap(0.5), ps, "montecarlo", samples=200_000, seed=3)
print(f"cap 0.5: spectral {res.squared:.5e} (+ <= {res.truncation_bound:.1e}),  MC {mc.squared:.5e} +- {mc.stderr:.1e}")

# generalized Stolarsky with the exact cap-intersection energy
rep = disc.generalized_stolarsky_check(ctx, ProfileFunction.cap(0.5), ps, 128)
print(f"generalized Stolarsky: lhs {rep.lhs:.6e}  rhs {rep.rhs:.6e}  bound {rep.truncation_bound:.1e}")

# clustering raises the refined right-hand side by about 2
base = generate(GeneratorSpec("fibonacci", 100))
pairs = generate(GeneratorSpec("cluster-pairs", 100, eps=1e-3))
print("clustering factor:", disc.corollary_rhs(pairs) / disc.corollary_rhs(base))
for name, s in (("fibonacci", base), ("cluster pairs", pairs)):
    b = disc.beck_refined_check(s)
    print(f"{name:14s} D^2 {b.lhs:.3e}  rhs {b.rhs:.3e}  ratio {b.ratio:.3f}")

# distance energy: positive definite up to the constant term
e = disc.energy_gap_report(ctx, disc.distance_profile(), ps, 64)
print(f"energy gap {e.difference:.4e}, clustering term {e.clustering_rhs:.3e}, fitted constant {e.fitted_constant:.1f}")
