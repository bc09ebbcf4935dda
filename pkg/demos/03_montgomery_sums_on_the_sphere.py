"""
Montgomery sums on the sphere
=============================

S_n = sum_k |sum_j Y_nk(x_j)|^2 measures how much of degree n a point set
fails to cancel.  The addition formula turns it into a sum over pairs of
E_n(x_i . x_j), which is what montgomery_sums computes.
"""

import numpy as np

from montlab.gegenbauer import GegenbauerContext
from montlab.pointsets import GeneratorSpec, generate
from montlab.sphere import explicit_harmonics_sum, kernel_lower_bound_sum, montgomery_sums, theorem2_rhs

ctx = GegenbauerContext(2, 64)

fib = generate(GeneratorSpec("fibonacci", 100))
rnd = generate(GeneratorSpec("uniform", 100, seed=1))
pairs = generate(GeneratorSpec("cluster-pairs", 100, eps=1e-3))

# the explicit S^2 basis agrees with the pair formula
print("gram vs explicit:", np.max(np.abs(montgomery_sums(ctx, rnd, 8) - explicit_harmonics_sum(rnd, 8))))

# S_n / N for the three sets: well separated points cancel low degrees
for name, ps in (("fibonacci", fib), ("uniform", rnd), ("cluster pairs", pairs)):
    S = montgomery_sums(ctx, ps, 16)
    print(f"{name:14s}", np.round(S[1:9] / ps.n, 2))

# the averaged kernels give the chain  sum S_n >= sum G^{d+1} >= sum G^{d+2} >= 0
L = 32
for name, ps in (("fibonacci", fib), ("uniform", rnd), ("cluster pairs", pairs)):
    lhs = montgomery_sums(ctx, ps, L).sum()
    g1 = kernel_lower_bound_sum(ctx, ps, L, 1)
    g2 = kernel_lower_bound_sum(ctx, ps, L, 2)
    print(f"{name:14s} lhs {lhs:10.1f}  G1 {g1:10.1f}  G2 {g2:10.1f}  lhs / rhs = {lhs / theorem2_rhs(ps, L):.3f}")
