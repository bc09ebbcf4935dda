"""
Cesaro kernels and their averaged versions
==========================================

The Cesaro means K_L^d of the zonal series are nonnegative (Kogbetliantz).
Averaging them once or twice gives G_n^{d+1} and G_n^{d+2}, whose lower
envelopes drive the Montgomery-type bounds on the sphere.
"""

import numpy as np

from montlab.gegenbauer import GegenbauerContext
from montlab.kernels import cesaro_kernels_upto, envelope_lower_bound, fit_envelope_constant, g_kernel2

d = 2
ctx = GegenbauerContext(d, 64)
theta = np.linspace(0, np.pi, 2001)
t = np.cos(theta)

# every K_j^d, j <= 64, on one grid
K = cesaro_kernels_upto(ctx, 64, t)
print("min over j, theta of K_j^d:", K.min())

# the few negative entries are round-off at the zeros of the kernels
print("relative size:", K.min() / K.max())

# G_n^{d+2} against its envelope n^d (1 + n theta)^(-d-1) log(2 + n theta)
n = 32
grid = np.linspace(2.0 / n, np.pi, 500)
G = g_kernel2(ctx, n, np.cos(grid))
env = envelope_lower_bound(d, n, grid)
print("G/envelope: min %.4f at theta = %.3f" % ((G / env).min(), grid[np.argmin(G / env)]))

# fitted constants across n; they drift slowly because the minimum sits at the peak
for level in (1, 2):
    lo = {1: 1e-3, 2: 2.0}[level]
    consts = [fit_envelope_constant(ctx, m, np.linspace(lo / m, np.pi, 2000), level=level) for m in (8, 16, 32, 64)]
    print(f"level {level}: ", np.round(consts, 4), " spread %.2f" % (max(consts) / min(consts)))

# the log-enhanced envelope for the once-averaged kernel is an open question; report it
consts = [fit_envelope_constant(ctx, m, np.linspace(2.0 / m, np.pi, 2000), level=1, log_factor=True) for m in (8, 16, 32, 64)]
print("G^{d+1} with log envelope:", np.round(consts, 4))
