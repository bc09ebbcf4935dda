"""
Exponential sums and the heat kernel on the torus
=================================================

On T^d the Montgomery sum runs over the first X + 1 Laplace eigenfunctions.
Its lower bound comes from comparing with the heat kernel at a time t chosen
so that the neglected tail is exponentially small.
"""

import numpy as np

from montlab.pointsets import GeneratorSpec, generate
from montlab.torus import (
    heat_comparison_diagnostic,
    heat_kernel,
    heat_kernel_spectral,
    montgomery_lemma_check,
    theorem1_functional,
)

ps = generate(GeneratorSpec("torus-random", 30, space="torus", d=2, seed=4, weighted=True))

# classical Montgomery lemma on the full frequency cube
rep = montgomery_lemma_check(ps, 10)
print("cube sum %.1f >= %.1f: %s" % (rep.lhs, rep.rhs, rep.holds))

# theta series and eigenfunction series describe the same kernel
x, y = np.array([0.1, 0.7]), np.array([0.8, 0.25])
for t in (1e-3, 1e-2, 1.0):
    a, b = heat_kernel(x, y, t), heat_kernel_spectral(x, y, t)
    print(f"t = {t:g}: images {a:.12e}  spectral {b:.12e}  |diff| {abs(a - b):.1e}")

# weighted lower bound X / (log X)^(d/2): ratio with and without the logarithm
for X in (64, 128, 256):
    r = theorem1_functional(ps, X)
    print(f"X = {X}: ratio {r.ratio:.3f}   without log {r.ratio_without_log:.3f}")

# every link of the heat-kernel comparison
chain = heat_comparison_diagnostic(ps, 500)
print("t = %.4g, A = %.2f" % (chain.t, chain.A))
for name, ok in chain.checks.items():
    print(f"  {name:28s} {ok}")
print("margin:", chain.margin)
