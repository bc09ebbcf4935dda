"""Exponential sums, heat kernels and the heat-kernel comparison on the flat torus T^d = [0, 1)^d.

Two spectral windows are used.  The *cube* window runs over complex
exponentials e^{2 pi i k.x} with max|k_i| <= X.  The *count* window runs
over the first X + 1 real L^2-normalised eigenfunctions of -Laplace,

    1, sqrt(2) cos(2 pi k.x), sqrt(2) sin(2 pi k.x),

ordered by eigenvalue 4 pi^2 |k|^2, then lexicographically on the
representative k (first nonzero coordinate positive), cosine before sine.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from .errors import CalibrationError, DomainError, RegimeError
from .pointsets import WeightedPointSet

# -log of the relative size of dropped series terms
_SERIES_CUTOFF = 40.0
DEFAULT_TAIL_C = 1.0


@dataclass(frozen=True)
class SpectrumWindow:
    d: int
    mode: str
    X: int

    def __post_init__(self):
        if self.mode not in ("cube", "count", "ball"):
            raise DomainError(f"unknown window mode {self.mode!r}")
        if self.X < 0:
            raise DomainError("X must be >= 0")


def lattice_box(R, d):
    axes = np.meshgrid(*([np.arange(-R, R + 1)] * d), indexing="ij")
    return np.column_stack([a.ravel() for a in axes])


def ball_frequencies(X, d):
    k = lattice_box(int(math.floor(X)), d)
    return k[np.sum(k * k, axis=1) <= X * X]


def _half_lattice(max_norm2, d):
    """Representatives k != 0 of {k, -k} with |k|^2 <= max_norm2, sorted by (|k|^2, k)."""
    R = int(math.isqrt(int(max_norm2)))
    k = lattice_box(R, d)
    n2 = np.sum(k * k, axis=1)
    keep = (n2 <= max_norm2) & (n2 > 0)
    k, n2 = k[keep], n2[keep]
    # first nonzero coordinate positive
    first = k[np.arange(k.shape[0]), np.argmax(k != 0, axis=1)]
    k, n2 = k[first > 0], n2[first > 0]
    order = np.lexsort(tuple(k[:, j] for j in reversed(range(d))) + (n2,))
    return k[order], n2[order]


@dataclass(frozen=True, eq=False)
class RealSpectrum:
    """Real eigenbasis in window order: frequency, kind (0 const, 1 cos, 2 sin), eigenvalue."""

    k: np.ndarray
    kind: np.ndarray
    eigenvalues: np.ndarray


def real_spectrum(d, count=None, max_norm2=None):
    """Enumerate the real eigenbasis, either the first ``count`` functions or all with |k|^2 <= max_norm2."""
    if count is not None:
        # every point with |k|^2 > r2 sorts after those inside, so a large enough ball suffices
        r2 = max(1, int((count / _unit_ball_volume(d)) ** (2.0 / d)) + 1)
        k, n2 = _half_lattice(r2, d)
        while 1 + 2 * k.shape[0] < count:
            r2 *= 2
            k, n2 = _half_lattice(r2, d)
    else:
        k, n2 = _half_lattice(max_norm2, d)
    kk = np.vstack([np.zeros((1, d), dtype=int), np.repeat(k, 2, axis=0)])
    kind = np.concatenate([[0], np.tile([1, 2], k.shape[0])])
    ev = 4.0 * math.pi**2 * np.concatenate([[0], np.repeat(n2, 2)]).astype(float)
    if count is not None:
        kk, kind, ev = kk[:count], kind[:count], ev[:count]
    return RealSpectrum(kk, kind, ev)


def _unit_ball_volume(d):
    return math.pi ** (d / 2) / math.gamma(d / 2 + 1)


def exponential_sums(ps: WeightedPointSet, freqs):
    """sum_n a_n e^{2 pi i k.x_n} for each row k of ``freqs``."""
    ps.require("torus")
    phase = 2.0 * math.pi * (np.asarray(freqs, dtype=float) @ ps.points.T)
    return np.exp(1j * phase) @ ps.weights


def _cube_power(ps, X):
    """|sum_n a_n e^{2 pi i k.x_n}|^2 on the full cube, as a d-dimensional array."""
    ks = np.arange(-X, X + 1)
    factors = [np.exp(2j * math.pi * np.outer(ks, ps.points[:, j])) for j in range(ps.d)]
    # tensor contraction over points, one axis per coordinate
    letters = "abcdefgh"[: ps.d]
    expr = ",".join(f"{c}z" for c in letters) + ",z->" + letters
    total = np.einsum(expr, *factors, ps.weights.astype(complex), optimize=True)
    return np.abs(total) ** 2


def _real_power(ps, spectrum):
    phase = 2.0 * math.pi * (spectrum.k.astype(float) @ ps.points.T)
    c = np.cos(phase) @ ps.weights
    s = np.sin(phase) @ ps.weights
    return np.where(spectrum.kind == 0, c**2, np.where(spectrum.kind == 1, 2 * c**2, 2 * s**2))


def exponential_sum_spectrum(ps: WeightedPointSet, window: SpectrumWindow):
    """Squared weighted sums per retained frequency / eigenfunction.

    ``cube``: array of shape (2X+1,)*d indexed by k + X.  ``count``: length
    X + 1 in the fixed eigenfunction order.  ``ball``: one entry per lattice
    point of :func:`ball_frequencies`.
    """
    ps.require("torus")
    if window.d != ps.d:
        raise DomainError("window dimension differs from point-set dimension")
    if window.mode == "cube":
        return _cube_power(ps, window.X)
    if window.mode == "count":
        return _real_power(ps, real_spectrum(ps.d, count=window.X + 1))
    return np.abs(exponential_sums(ps, ball_frequencies(window.X, ps.d))) ** 2


@dataclass(frozen=True)
class MontgomeryReport:
    lhs: float
    rhs: float
    holds: bool


def montgomery_lemma_check(ps: WeightedPointSet, X):
    """Full cube-window sum against (sum a_i^2) X^d, i.e. N X^2 for unit weights on T^2.

    Relative slack 1e-9.
    """
    ps.require("torus")
    lhs = float(np.sum(_cube_power(ps, int(X))))
    rhs = float(np.sum(ps.weights**2)) * float(X) ** ps.d
    return MontgomeryReport(lhs, rhs, lhs >= rhs - 1e-9 * lhs)


@dataclass(frozen=True)
class Theorem1Report:
    lhs: float
    rhs_core: float
    ratio: float
    ratio_without_log: float


def theorem1_functional(ps: WeightedPointSet, X):
    """sum_{k=0}^{X} |sum_n a_n phi_k(x_n)|^2 against (sum a_i^2) X / (log X)^(d/2)."""
    ps.require("torus")
    if X < 2:
        raise DomainError("X must be >= 2 so that log X > 0")
    lhs = float(np.sum(exponential_sum_spectrum(ps, SpectrumWindow(ps.d, "count", int(X)))))
    sq = float(np.sum(ps.weights**2))
    rhs = sq * X / math.log(X) ** (ps.d / 2)
    if sq == 0:
        return Theorem1Report(lhs, 0.0, math.nan, math.nan)
    return Theorem1Report(lhs, rhs, lhs / rhs, lhs / (sq * X))


@dataclass(frozen=True)
class HeatParameters:
    t: float
    truncation: int

    @classmethod
    def for_time(cls, t):
        if t <= 0:
            raise DomainError(f"heat time must be positive, got {t}")
        # image terms beyond R are below exp(-_SERIES_CUTOFF) of the leading one
        R = int(math.ceil(math.sqrt(4.0 * t * _SERIES_CUTOFF))) + 1
        return cls(float(t), R)


def _wrap(diff):
    return diff - np.round(diff)


def heat_kernel(x, y, params, d=None):
    """Heat kernel on the unit torus as a periodised Gaussian (theta series).

    ``x`` and ``y`` broadcast against each other with coordinates on the last
    axis.  ``params`` is a :class:`HeatParameters` or a time ``t``.
    """
    if not isinstance(params, HeatParameters):
        params = HeatParameters.for_time(params)
    t = params.t
    diff = _wrap(np.asarray(x, dtype=float) - np.asarray(y, dtype=float))
    d = diff.shape[-1] if d is None else d
    # separable: product over coordinates of 1-d theta series
    m = np.arange(-params.truncation, params.truncation + 1, dtype=float)
    one_d = np.exp(-((diff[..., None] - m) ** 2) / (4.0 * t)).sum(axis=-1)
    return np.prod(one_d, axis=-1) / (4.0 * math.pi * t) ** (d / 2)


def heat_kernel_spectral(x, y, t, d=None):
    """Heat kernel from its eigenfunction expansion sum_k e^{-4 pi^2 |k|^2 t} e^{2 pi i k.(x - y)}."""
    if t <= 0:
        raise DomainError(f"heat time must be positive, got {t}")
    diff = _wrap(np.asarray(x, dtype=float) - np.asarray(y, dtype=float))
    K = int(math.ceil(math.sqrt(_SERIES_CUTOFF / (4.0 * math.pi**2 * t)))) + 1
    k = np.arange(-K, K + 1, dtype=float)
    one_d = (np.exp(-4.0 * math.pi**2 * k**2 * t) * np.cos(2.0 * math.pi * diff[..., None] * k)).sum(axis=-1)
    return np.prod(one_d, axis=-1)


def heat_quadratic_form(ps: WeightedPointSet, t):
    """sum_{i,j} a_i a_j p_t(x_i, x_j)."""
    ps.require("torus")
    p = heat_kernel(ps.points[:, None, :], ps.points[None, :, :], t, ps.d)
    return float(ps.weights @ p @ ps.weights)


def log_tail_bound(X, t, d, c=DEFAULT_TAIL_C):
    a = X ** (2.0 / d) * t
    if a < 4.0:
        raise RegimeError(f"X^(2/d) t = {a:.3g} < 4: outside the asymptotic regime")
    return -(d - 0.5) * math.log(t) + (d - 1.5) * math.log(a) - c * a


def tail_bound(X, t, d, c=DEFAULT_TAIL_C):
    """t^-(d - 1/2) (X^(2/d) t)^(d - 3/2) exp(-c X^(2/d) t), valid for X^(2/d) t >= 4."""
    return math.exp(log_tail_bound(X, t, d, c))


def log_exact_tail(X, t, d):
    """log of sum_{k > X} e^{-lambda_k t} ||phi_k||_inf^2 in the count-window order (sup^2 = 2)."""
    head = real_spectrum(d, count=X + 1)
    n2_x = head.eigenvalues[-1] / (4.0 * math.pi**2)
    # reach the next shell, then far enough past it that dropped terms are below e^-cutoff
    next_shell = n2_x + 2.0 * math.sqrt(n2_x) + 1.0
    max_norm2 = next_shell + (_SERIES_CUTOFF + 10.0) / (4.0 * math.pi**2 * t)
    full = real_spectrum(d, max_norm2=max_norm2)
    ev = full.eigenvalues[X + 1 :]
    if ev.size == 0:
        return -math.inf
    return float(logsumexp(-ev * t) + math.log(2.0))


def exact_tail(X, t, d):
    return math.exp(log_exact_tail(X, t, d))


def calibrate_tail_constant(d, c0=DEFAULT_TAIL_C, shrink=0.8, Xs=None, a_values=None, max_iter=60):
    """Shrink ``c`` from ``c0`` until the tail bound dominates the exact tail on a test grid.

    Comparisons are made in log space so that astronomically small tails are
    still resolved.  Returns the calibrated constant.
    """
    Xs = Xs or ([16, 64, 256, 1024] if d == 1 else [16, 64, 256, 1024])
    a_values = a_values or [4.0, 6.0, 10.0, 20.0, 40.0]
    exact = {}
    for X in Xs:
        for a in a_values:
            t = a / X ** (2.0 / d)
            exact[(X, t)] = log_exact_tail(X, t, d)
    c = c0
    for _ in range(max_iter):
        if all(log_tail_bound(X, t, d, c) >= v for (X, t), v in exact.items()):
            return c
        c *= shrink
    raise CalibrationError(f"tail bound never dominated the exact tail on T^{d}")


def time_choice(X, d, c=DEFAULT_TAIL_C):
    """t = A X^(-2/d) log X with A = (1 - 1/d)/c + 1; also returns A."""
    A = (1.0 - 1.0 / d) / c + 1.0
    return A * X ** (-2.0 / d) * math.log(X), A


@dataclass
class HeatChainReport:
    X: int
    t: float
    A: float
    c: float
    spectral_lhs: float
    damped_lhs: float
    heat_form: float
    heat_diagonal_exact: float
    heat_diagonal: float
    exact_tail_term: float
    tail: float
    margin: float
    final_bracket: float
    mass_condition: bool
    checks: dict = field(default_factory=dict)

    @property
    def holds(self):
        return all(self.checks.values())


def heat_comparison_diagnostic(ps: WeightedPointSet, X, c=DEFAULT_TAIL_C, rtol=1e-10):
    """Evaluate every link of the heat-kernel lower bound for the count window.

    With t = A X^(-2/d) log X:

    * spectral_lhs >= damped_lhs = sum_{k<=X} e^{-lambda_k t} |sum a_n phi_k(x_n)|^2
    * damped_lhs >= heat_form - (sum a)^2 * exact tail
    * exact tail <= tail bound
    * heat_form >= sum a_i^2 p_t(x_i, x_i) >= (4 pi)^(-d/2) t^(-d/2) sum a_i^2

    ``margin`` is spectral_lhs - (heat_form - (sum a)^2 tail_bound).
    """
    ps.require("torus")
    d = ps.d
    t, A = time_choice(X, d, c)
    spec = real_spectrum(d, count=X + 1)
    power = _real_power(ps, spec)
    spectral_lhs = float(np.sum(power))
    damped = float(np.sum(np.exp(-spec.eigenvalues * t) * power))
    heat_form = heat_quadratic_form(ps, t)
    a = ps.weights
    p_diag = float(heat_kernel(np.zeros(d), np.zeros(d), t, d))
    diag_exact = float(np.sum(a**2)) * p_diag
    heat_diag = t ** (-d / 2) * float(np.sum(a**2))
    mass2 = float(np.sum(a)) ** 2
    exact_term = mass2 * exact_tail(X, t, d)
    tail = mass2 * tail_bound(X, t, d, c)
    margin = spectral_lhs - (heat_form - tail)
    sq = float(np.sum(a**2))
    bracket = sq * ((4 * math.pi) ** (-d / 2) * t ** (-d / 2) - X * tail_bound(X, t, d, c))
    scale = max(1.0, abs(heat_form))
    checks = {
        "lhs>=damped": spectral_lhs >= damped - rtol * scale,
        "damped>=heat-exact_tail": damped >= heat_form - exact_term - rtol * scale,
        "exact_tail<=bound": exact_term <= tail * (1 + rtol) or mass2 == 0,
        "heat>=diagonal": heat_form >= diag_exact - rtol * scale,
        "diagonal>=gaussian": diag_exact >= (4 * math.pi) ** (-d / 2) * heat_diag * (1 - rtol),
        "margin>=0": margin >= -rtol * scale,
    }
    return HeatChainReport(
        X=int(X), t=t, A=A, c=c, spectral_lhs=spectral_lhs, damped_lhs=damped,
        heat_form=heat_form, heat_diagonal_exact=diag_exact, heat_diagonal=heat_diag,
        exact_tail_term=exact_term, tail=tail, margin=margin, final_bracket=bracket,
        mass_condition=X >= (mass2 / sq if sq > 0 else 0.0), checks=checks,
    )


def torus_distance(ps: WeightedPointSet):
    """Pairwise flat-torus distances (coordinatewise distance to the nearest integer)."""
    diff = _wrap(ps.points[:, None, :] - ps.points[None, :, :])
    return np.sqrt(np.sum(diff**2, axis=-1))


def clustering_diagnostic_torus(ps: WeightedPointSet, X):
    """sum_{i,j} X^2 / (1 + X^4 |x_i - x_j|^4)."""
    ps.require("torus")
    r = torus_distance(ps)
    return float(np.sum(X**2 / (1.0 + X**4 * r**4)))


def ball_window_sum(ps: WeightedPointSet, X):
    return float(np.sum(exponential_sum_spectrum(ps, SpectrumWindow(ps.d, "ball", X))))
