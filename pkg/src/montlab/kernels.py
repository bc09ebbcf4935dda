"""Cesaro-type kernels on S^d and their averaged versions.

Every kernel here is a finite combination ``sum_k w_k E_k(t)`` with
nonnegative weights, so sums over point pairs reduce to ``sum_k w_k S_k``
where ``S_k`` are the Montgomery sums of :mod:`montlab.sphere`.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True, eq=False)
class CesaroCoefficients:
    delta: float
    values: np.ndarray

    def __getitem__(self, j):
        return self.values[j]


def cesaro_a(delta, L):
    """A_j^delta = Gamma(j + delta + 1) / (Gamma(j + 1) Gamma(delta + 1)), j = 0..L.

    Uses the ratio recurrence A_j = A_{j-1} (j + delta) / j, which does not
    overflow for large j.
    """
    if delta <= 0:
        raise DomainError(f"delta must be positive, got {delta}")
    if L < 0:
        raise DomainError("L must be >= 0")
    vals = np.ones(L + 1)
    for j in range(1, L + 1):
        vals[j] = vals[j - 1] * (j + delta) / j
    return CesaroCoefficients(float(delta), vals)


def cesaro_weights(delta, L):
    """Weights A_{L-k} / A_L multiplying E_k in K_L^delta, k = 0..L."""
    a = cesaro_a(delta, L).values
    return a[::-1] / a[L]


def cesaro_weight_matrix(delta, n):
    """Lower-triangular M with K_j = sum_k M[j, k] E_k for j = 0..n."""
    a = cesaro_a(delta, n).values
    j = np.arange(n + 1)[:, None]
    k = np.arange(n + 1)[None, :]
    diff = np.where(k <= j, j - k, 0)
    return np.where(k <= j, a[diff] / a[j], 0.0)


def g1_weights(d, n):
    """Coefficients of G_n^{d+1} in the E_k basis."""
    return cesaro_weight_matrix(d, n).mean(axis=0)


def g2_weights(d, n):
    """Coefficients of G_n^{d+2} in the E_k basis."""
    m = cesaro_weight_matrix(d, n)
    prefix_means = np.cumsum(m, axis=0) / np.arange(1, n + 2)[:, None]
    return prefix_means.mean(axis=0)


def cesaro_kernel(ctx, delta, L, t):
    """K_L^delta(t) = sum_{k=0}^{L} A_{L-k}/A_L E_k(t)."""
    table = ctx.E_table(L, t)
    return np.tensordot(cesaro_weights(delta, L), table, axes=1)


def cesaro_kernels_upto(ctx, n, t):
    """K_0^d(t), ..., K_n^d(t) as rows (delta = d)."""
    table = ctx.E_table(n, t)
    m = cesaro_weight_matrix(ctx.d, n)
    return np.tensordot(m, table, axes=1)


def g_kernel1(ctx, n, t):
    """G_n^{d+1}(t): mean of K_j^d(t) over j = 0..n."""
    return cesaro_kernels_upto(ctx, n, t).mean(axis=0)


def g_kernel2(ctx, n, t):
    """G_n^{d+2}(t): mean of G_j^{d+1}(t) over j = 0..n.

    The G_j^{d+1} come from running prefix sums of the K_j^d, so the whole
    evaluation is one pass over the K_j values.
    """
    k = cesaro_kernels_upto(ctx, n, t)
    g1 = np.cumsum(k, axis=0) / np.arange(1, n + 2).reshape((-1,) + (1,) * (k.ndim - 1))
    return g1.mean(axis=0)


def envelope_lower_bound(d, n, theta, C=1.0, log_factor=True):
    """C n^d (1 + n theta)^(-d-1) log(2 + n theta); without the log if ``log_factor`` is False."""
    theta = np.asarray(theta, dtype=float)
    if np.any(theta <= 0) or np.any(theta >= np.pi + 1e-15):
        raise DomainError("theta must lie in (0, pi)")
    if n < 1 or C <= 0:
        raise DomainError("need n >= 1 and C > 0")
    x = n * theta
    val = C * float(n) ** d * (1.0 + x) ** (-d - 1)
    if log_factor:
        val = val * np.log(2.0 + x)
    return val


@dataclass(frozen=True, eq=False)
class KernelTable:
    kind: str
    d: int
    params: dict
    t: np.ndarray
    values: np.ndarray

    @property
    def theta(self):
        return np.arccos(np.clip(self.t, -1.0, 1.0))

    @property
    def peak(self):
        """Analytic value at t = 1 (sum of weights times dim H_k)."""
        return self.params["peak"]


def kernel_table(ctx, kind, n, t, delta=None):
    """Tabulate one kernel on the inner products ``t``.

    ``kind`` is ``"cesaro"`` (needs ``delta``), ``"g1"`` or ``"g2"``.
    """
    t = np.asarray(t, dtype=float)
    if kind == "cesaro":
        delta = ctx.d if delta is None else delta
        vals = cesaro_kernel(ctx, delta, n, t)
        w = cesaro_weights(delta, n)
    elif kind == "g1":
        vals = g_kernel1(ctx, n, t)
        w = g1_weights(ctx.d, n)
    elif kind == "g2":
        vals = g_kernel2(ctx, n, t)
        w = g2_weights(ctx.d, n)
    else:
        raise DomainError(f"unknown kernel kind {kind!r}")
    peak = float(np.dot(w, ctx.dims(n)))
    params = {"n": n, "delta": delta, "peak": peak}
    return KernelTable(kind, ctx.d, params, t, vals)


def fit_envelope_constant(ctx, n, thetas, level=2, log_factor=None):
    """Largest C with G_n(cos theta) >= C * envelope on the grid.

    ``level`` 1 pairs G_n^{d+1} with the plain envelope n^d (1+n theta)^(-d-1);
    level 2 pairs G_n^{d+2} with the log-enhanced one.  ``log_factor``
    overrides the pairing.
    """
    thetas = np.asarray(thetas, dtype=float)
    if log_factor is None:
        log_factor = level == 2
    kern = g_kernel2 if level == 2 else g_kernel1
    vals = kern(ctx, n, np.cos(thetas))
    env = envelope_lower_bound(ctx.d, n, thetas, 1.0, log_factor=log_factor)
    return float(np.min(vals / env))
