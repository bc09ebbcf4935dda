"""Spherical-harmonic Montgomery sums on S^d.

The degree-n sum over an orthonormal basis of H_n collapses, by the
addition formula, to a sum over point pairs:

    S_n = sum_k |sum_j a_j Y_nk(x_j)|^2 = sum_{i,j} a_i a_j E_n(x_i . x_j).

Bases are normalised against the probability measure sigma, so Y_0 = 1 and
S_0 = (sum_j a_j)^2.
"""

import math

import numpy as np
from scipy.special import lpmv

from .errors import DomainError, UnsupportedDimensionError
from .kernels import g1_weights, g2_weights, g_kernel1, g_kernel2
from .pointsets import WeightedPointSet

INT64_MAX = 2**63 - 1


def harmonic_dimension(d, n):
    """Exact dim H_n on S^d: (2n + d - 1) / n * binom(n + d - 2, n - 1)."""
    if d < 2 or n < 0:
        raise DomainError(f"need d >= 2 and n >= 0, got d={d}, n={n}")
    if n == 0:
        return 1
    val = (2 * n + d - 1) * math.comb(n + d - 2, n - 1) // n
    if val > INT64_MAX:
        raise OverflowError(f"dim H_{n} on S^{d} exceeds the 64-bit range")
    return val


def gram_matrix(ps: WeightedPointSet):
    """Inner products x_i . x_j, symmetrised, clipped to [-1, 1], unit diagonal."""
    ps.require("sphere")
    g = ps.points @ ps.points.T
    g = 0.5 * (g + g.T)
    np.clip(g, -1.0, 1.0, out=g)
    np.fill_diagonal(g, 1.0)
    return g


def chordal_distances(ps: WeightedPointSet):
    g = gram_matrix(ps)
    return np.sqrt(np.clip(2.0 - 2.0 * g, 0.0, None))


def _pair_reduce(ctx, ps, L, weights):
    """sum_{i,j} a_i a_j E_n(x_i . x_j) for n = 0..L, using symmetry of the Gram matrix."""
    g = gram_matrix(ps)
    a = ps.weights
    iu, ju = np.triu_indices(ps.n, k=1)
    out = np.zeros(L + 1)
    dims = ctx.dims(L)
    out += np.sum(a * a) * dims
    if iu.size:
        table = ctx.E_table(L, g[iu, ju])
        out += 2.0 * np.sum(table * (a[iu] * a[ju]), axis=1)
    if weights is not None:
        return float(np.dot(weights, out))
    return out


def montgomery_sums(ctx, ps: WeightedPointSet, L):
    """S_n for n = 0..L through the Gram matrix; cost O(N^2 L).

    Weights a_i enter as sum_{i,j} a_i a_j E_n(x_i . x_j).
    """
    ps.require("sphere")
    if ps.d != ctx.d:
        raise DomainError(f"point set lives on S^{ps.d}, context is for S^{ctx.d}")
    if not 0 <= L <= ctx.max_degree:
        raise DomainError(f"L={L} outside [0, {ctx.max_degree}]")
    return _pair_reduce(ctx, ps, L, None)


def _real_harmonics_s2(L, points):
    """Real orthonormal basis of H_n on S^2 (sigma-normalised), n = 0..L.

    Returns a list whose n-th entry has shape (2n + 1, N).
    """
    x, y, z = points.T
    theta = np.arccos(np.clip(z, -1.0, 1.0))
    phi = np.arctan2(y, x)
    ct = np.cos(theta)
    basis = []
    for n in range(L + 1):
        rows = [math.sqrt(2 * n + 1) * lpmv(0, n, ct)]
        for m in range(1, n + 1):
            norm = math.sqrt(2.0 * (2 * n + 1) * math.factorial(n - m) / math.factorial(n + m))
            p = lpmv(m, n, ct)
            rows.append(norm * p * np.cos(m * phi))
            rows.append(norm * p * np.sin(m * phi))
        basis.append(np.array(rows))
    return basis


def explicit_harmonics_sum(ps: WeightedPointSet, L):
    """S_n computed literally as sum_k |sum_j a_j Y_nk(x_j)|^2 on S^2, n <= 8."""
    ps.require("sphere")
    if ps.d != 2:
        raise UnsupportedDimensionError("explicit harmonic basis is only provided on S^2")
    if not 0 <= L <= 8:
        raise UnsupportedDimensionError("explicit harmonic basis is only provided for n <= 8")
    basis = _real_harmonics_s2(L, ps.points)
    return np.array([np.sum((y @ ps.weights) ** 2) for y in basis])


def theorem2_lhs(ctx, ps, L):
    """sum_{n=0}^{L} S_n."""
    return float(np.sum(montgomery_sums(ctx, ps, L)))


def clustering_energy(ps: WeightedPointSet, scale, d=None):
    """sum_{i,j} log(2 + s r_ij) / (1 + s r_ij)^(d + 1), r_ij chordal distance."""
    d = ps.d if d is None else d
    r = chordal_distances(ps)
    sr = scale * r
    return float(np.sum(np.log(2.0 + sr) / (1.0 + sr) ** (d + 1)))


def theorem2_rhs(ps, L, d=None):
    """L^d * clustering_energy(ps, L), i.e. the refined right-hand side without its constant."""
    d = ps.d if d is None else d
    return float(L) ** d * clustering_energy(ps, L, d)


def kernel_lower_bound_sum(ctx, ps, L, level):
    """sum_{i,j} G_L^{d+level}(x_i . x_j), evaluated pairwise from the kernels."""
    if level not in (1, 2):
        raise DomainError("level must be 1 or 2")
    kern = g_kernel1 if level == 1 else g_kernel2
    g = gram_matrix(ps)
    a = ps.weights
    iu, ju = np.triu_indices(ps.n, k=1)
    diag = kern(ctx, L, 1.0)
    total = float(np.sum(a * a) * diag)
    if iu.size:
        total += 2.0 * float(np.sum(kern(ctx, L, g[iu, ju]) * a[iu] * a[ju]))
    return total


def kernel_sum_from_spectrum(ctx, sums, L, level):
    """Same quantity as :func:`kernel_lower_bound_sum` from precomputed S_n."""
    w = g1_weights(ctx.d, L) if level == 1 else g2_weights(ctx.d, L)
    return float(np.dot(w, sums[: L + 1]))
