"""
Gegenbauer polynomials and hat coefficients
===========================================

Zonal functions on the sphere S^d are functions of one inner product t = x.y.
They expand in the normalised Gegenbauer polynomials E_n, and the expansion
coefficients (the "hat" coefficients) are what every other module builds on.
"""

import numpy as np

from montlab.gegenbauer import GegenbauerContext, cap_hat_l2_average, hat_transform
from montlab.profiles import ProfileFunction
from montlab.sphere import harmonic_dimension

# a context fixes the dimension and the largest degree we will ask for
ctx = GegenbauerContext(d=2, max_degree=64)
print("lambda =", ctx.lam, " Gauss nodes:", ctx.nodes.size)

# E_n(1) is the dimension of the degree-n harmonics
print("E_n(1):", ctx.dims(6))
print("d_n   :", [harmonic_dimension(2, n) for n in range(7)])

# on S^2 the Gegenbauer polynomials are Legendre polynomials
t = np.linspace(-1, 1, 5)
print("C_3(t) =", ctx.C(3, t), " P_3(t) =", 0.5 * (5 * t**3 - 3 * t))

# hat coefficients of exp(t); the expansion reproduces the profile
f = ProfileFunction.numeric(np.exp)
h = hat_transform(ctx, f, 30).values
print("hat exp:", h[:5])
print("reconstruction error:", np.max(np.abs(h @ ctx.E_table(30, t) - np.exp(t))))

# a spherical cap indicator 1{t >= tau} has slowly decaying coefficients
cap = hat_transform(ctx, ProfileFunction.cap(0.5), 64).values
print("cap hats at n = 1, 8, 64:", cap[[1, 8, 64]])

# averaged over all cap sizes the decay is n^(-d-1) = n^-3 on S^2
for n in (2, 8, 32, 64):
    print(f"n = {n:3d}   n^3 * int |hat f_tau(n)|^2 dtau = {cap_hat_l2_average(ctx, n) * n**3:.4f}")
