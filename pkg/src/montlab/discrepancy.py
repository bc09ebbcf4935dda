"""L2 discrepancies and discrete energies of point sets on S^d.

Hat coefficients follow :mod:`montlab.gegenbauer` (Funk-Hecke multipliers),
so for a profile ``f`` and unit-weight points ``Z``

    D^2_{L2,f}(Z) = 1/N^2 sum_{n>=1} hat f(n)^2 S_n(Z),

and the energy profile ``F`` with ``hat F = hat f^2`` satisfies

    D^2_{L2,f}(Z) = 1/N^2 sum_{i,j} F(z_i.z_j) - I_F(sigma).
"""

import logging
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate
from scipy.special import betainc, gammaln

from .errors import CalibrationError, DomainError, NotPositiveDefiniteError, StateError
from .gegenbauer import angular_rule, cap_hat_l2_average, hat_transform
from .pointsets import WeightedPointSet, make_rng, uniform_sphere
from .profiles import ProfileFunction
from .sphere import chordal_distances, clustering_energy, gram_matrix, montgomery_sums

logger = logging.getLogger(__name__)

DEFAULT_C_PRIME = 4.0
MC_BATCH = 50_000

_calibrated = {}


def distance_integral(d):
    """J_d = int int |x - y| dsigma dsigma = 2^d Gamma((d+1)/2)^2 / (sqrt(pi) Gamma(d + 1/2))."""
    return math.exp(d * math.log(2.0) + 2.0 * gammaln((d + 1) / 2.0) - 0.5 * math.log(math.pi) - gammaln(d + 0.5))


def cap_measure(d, tau):
    """sigma of a cap {y: x.y >= tau} on S^d."""
    lam = (d - 1) / 2.0
    return betainc(lam + 0.5, lam + 0.5, (1.0 - np.asarray(tau, dtype=float)) / 2.0)


def mean_pairwise_distance(ps):
    return float(np.mean(chordal_distances(ps)))


def distance_integral_mc(d, samples=1_000_000, seed=0):
    """Monte Carlo estimate of J_d from independent pairs; returns ``(value, stderr)``."""
    acc = RunningMoments()
    for rng, size in _batch_generators(seed, samples):
        x = uniform_sphere(size, d, rng)
        y = uniform_sphere(size, d, rng)
        acc = acc.merge(RunningMoments.of(np.linalg.norm(x - y, axis=1)))
    return acc.mean, acc.stderr


def distance_profile():
    """F(t) = -|x - y| = -sqrt(2 - 2t), the (negated) Euclidean distance energy."""
    return ProfileFunction.numeric(lambda t: -np.sqrt(np.clip(2.0 - 2.0 * t, 0.0, None)), name="-distance")


class RunningMoments:
    """Mean / variance accumulator; :meth:`merge` is associative (Chan et al.)."""

    def __init__(self, count=0, mean=0.0, m2=0.0):
        self.count, self.mean, self.m2 = count, mean, m2

    @classmethod
    def of(cls, values):
        values = np.asarray(values, dtype=float)
        if values.size == 0:
            return cls()
        mean = float(values.mean())
        return cls(values.size, mean, float(np.sum((values - mean) ** 2)))

    def merge(self, other):
        n = self.count + other.count
        if n == 0:
            return RunningMoments()
        delta = other.mean - self.mean
        mean = self.mean + delta * other.count / n
        m2 = self.m2 + other.m2 + delta**2 * self.count * other.count / n
        return RunningMoments(n, mean, m2)

    @property
    def stderr(self):
        if self.count < 2:
            return math.inf
        return math.sqrt(self.m2 / (self.count - 1) / self.count)


def _batch_generators(seed, samples):
    n_batches = max(1, math.ceil(samples / MC_BATCH))
    children = np.random.SeedSequence(int(seed)).spawn(n_batches)
    sizes = [MC_BATCH] * (n_batches - 1) + [samples - MC_BATCH * (n_batches - 1)]
    return [(np.random.Generator(np.random.Philox(c)), s) for c, s in zip(children, sizes)]


def _monte_carlo(d, samples, seed, per_sample):
    """Average ``per_sample(x)`` over uniform points x on S^d in deterministic batches."""
    acc = RunningMoments()
    for rng, size in _batch_generators(seed, samples):
        x = uniform_sphere(size, d, rng)
        acc = acc.merge(RunningMoments.of(per_sample(x)))
    return acc


@dataclass
class DiscrepancyResult:
    value: float
    squared: float
    method: str
    stderr: float = 0.0
    truncation_bound: float = 0.0
    details: dict = field(default_factory=dict)


def _profile_norm2(ctx, f):
    """sigma-mean of f(x.y)^2 for the truncation bound."""
    if f.kind == "cap":
        return float(cap_measure(ctx.d, f.tau))
    if f.kind == "series":
        return None
    edges = [0.0] + sorted(math.acos(b) for b in f.breakpoints) + [math.pi]
    t, w = angular_rule(ctx.lam, edges, 256)
    return float(np.dot(w, f(t) ** 2) / ctx.mass)


def discrepancy_l2(ctx, f, ps, method="spectral", L=None, samples=1_000_000, seed=0):
    """D_{L2,f}(Z) by the spectral formula or by Monte Carlo over x.

    Spectral results carry ``truncation_bound``, an upper bound for the
    omitted degrees n > L obtained from Parseval for ``f`` and S_n <= N^2 d_n.
    Monte Carlo results carry the standard error of the squared value.
    """
    ps.require("sphere")
    if not ps.unit_weights:
        raise DomainError("discrepancy is defined for unit weights")
    if not isinstance(f, ProfileFunction):
        f = ProfileFunction.numeric(f)
    N = ps.n
    if method == "spectral":
        if L is None:
            L = ctx.max_degree
        if L > ctx.max_degree:
            raise DomainError(f"L={L} exceeds max_degree={ctx.max_degree}")
        hat = hat_transform(ctx, f, L).values
        S = montgomery_sums(ctx, ps, L)
        sq = float(np.sum(hat[1:] ** 2 * S[1:]) / N**2)
        norm2 = _profile_norm2(ctx, f)
        if norm2 is None:
            trunc = 0.0 if f.degree <= L else math.inf
        else:
            trunc = max(0.0, norm2 - float(np.sum(hat**2 * ctx.dims(L))))
        return DiscrepancyResult(math.sqrt(max(sq, 0.0)), sq, "spectral", 0.0, trunc, {"L": L})
    if method == "montecarlo":
        mean_f = hat_transform(ctx, f, 0).values[0]
        z = ps.points

        def per_sample(x):
            g = f(x @ z.T).mean(axis=1)
            return (g - mean_f) ** 2

        acc = _monte_carlo(ps.d, samples, seed, per_sample)
        return DiscrepancyResult(
            math.sqrt(max(acc.mean, 0.0)), acc.mean, "montecarlo", acc.stderr, 0.0,
            {"samples": samples, "seed": seed},
        )
    raise DomainError(f"unknown method {method!r}")


def _cap_primitive(d, u):
    """H(u) = int_{-1}^{u} sigma(cap(tau)) dtau."""
    lam = (d - 1) / 2.0
    mass = math.exp(0.5 * math.log(math.pi) + gammaln(lam + 0.5) - gammaln(lam + 1.0))
    return 1.0 + u * cap_measure(d, u) - (1.0 - u * u) ** (lam + 0.5) / ((2 * lam + 1) * mass)


def _cap_square_integral(d):
    val, _ = integrate.quad(lambda s: float(cap_measure(d, s)) ** 2, -1.0, 1.0, epsabs=1e-14, epsrel=1e-13)
    return val


def cap_discrepancy_direct(ps, samples=1_000_000, seed=0):
    """D^2_{L2,cap} from its definition: Monte Carlo in x, exact integration in tau.

    For fixed x the count #{j: x.z_j >= tau} is piecewise constant in tau, so
    the tau-integral of the squared local discrepancy is evaluated in closed
    form from the sorted inner products.  Returns ``(value, stderr)``.
    """
    ps.require("sphere")
    d, N = ps.d, ps.n
    z = ps.points
    s2 = _cap_square_integral(d)
    # pair multiplicity of the k-th smallest value in sum_{i,j} min(u_i, u_j)
    mult = 2.0 * (N - np.arange(1, N + 1)) + 1.0

    def per_sample(x):
        u = np.clip(x @ z.T, -1.0, 1.0)
        u.sort(axis=1)
        count_sq = N * N + u @ mult
        cross = _cap_primitive(d, u).sum(axis=1)
        return count_sq / N**2 - 2.0 * cross / N + s2

    acc = _monte_carlo(d, samples, seed, per_sample)
    return acc.mean, acc.stderr


def cap_discrepancy_spectral(ctx, ps, L=None):
    """D^2_{L2,cap} = 1/N^2 sum_{n=1}^{L} (int |hat f_tau(n)|^2 dtau) S_n, truncated at L."""
    L = ctx.max_degree if L is None else L
    S = montgomery_sums(ctx, ps, L)
    a = np.array([cap_hat_l2_average(ctx, n) for n in range(1, L + 1)])
    return float(np.dot(a, S[1:]) / ps.n**2)


@dataclass
class StolarskyCalibration:
    d: int
    c: float
    stderr: float
    ratios: list
    ratio_stderrs: list
    spread: float
    samples: int
    seed: int


def stolarsky_constant_exact(ctx):
    """c_d from degree one: hat F(1) / int |hat f_tau(1)|^2 dtau with F = -distance.

    Both sides of the Stolarsky identity are diagonal in the harmonic degree,
    so the ratio of the degree-one coefficients fixes the constant.
    """
    dist_hat = hat_transform(ctx, distance_profile(), 1).values[1]
    return float(dist_hat / cap_hat_l2_average(ctx, 1))


def calibrate_stolarsky_constant(d, n_sets=5, N=100, samples=1_000_000, seed=0, max_spread=0.05, store=True):
    """Estimate c_d as (J_d - mean distance) / D^2_direct over random sets.

    Raises :class:`CalibrationError` when the per-set ratios differ by more
    than ``max_spread`` (relative).
    """
    if d < 2:
        raise DomainError("Stolarsky calibration needs d >= 2")
    jd = distance_integral(d)
    ss = np.random.SeedSequence(int(seed))
    ratios, errs = [], []
    for child in ss.spawn(n_sets):
        rng = np.random.Generator(np.random.Philox(child))
        ps = WeightedPointSet("sphere", d, uniform_sphere(N, d, rng))
        energy = jd - mean_pairwise_distance(ps)
        mc_seed = int(rng.integers(2**63))
        d2, se = cap_discrepancy_direct(ps, samples, mc_seed)
        ratios.append(energy / d2)
        errs.append(energy * se / d2**2)
    ratios = np.array(ratios)
    spread = float(ratios.max() / ratios.min() - 1.0)
    if spread > max_spread:
        raise CalibrationError(f"Stolarsky ratios inconsistent (spread {spread:.3%})")
    w = 1.0 / np.array(errs) ** 2
    c = float(np.sum(w * ratios) / np.sum(w))
    se = float(1.0 / math.sqrt(np.sum(w)))
    cal = StolarskyCalibration(d, c, se, ratios.tolist(), errs, spread, samples, int(seed))
    if store:
        _calibrated[d] = cal
    return cal


def set_stolarsky_constant(d, c):
    """Pin c_d (e.g. from a config file) without running the calibration."""
    _calibrated[d] = StolarskyCalibration(d, float(c), 0.0, [], [], 0.0, 0, 0)


def stolarsky_constant(d):
    try:
        return _calibrated[d].c
    except KeyError:
        raise StateError(f"c_{d} has not been calibrated; call calibrate_stolarsky_constant({d})")


def cap_discrepancy_stolarsky(ps, c_d=None):
    """D^2_{L2,cap} = (J_d - mean pairwise distance) / c_d."""
    ps.require("sphere")
    c = stolarsky_constant(ps.d) if c_d is None else getattr(c_d, "c", c_d)
    return (distance_integral(ps.d) - mean_pairwise_distance(ps)) / c


def cap_intersection_measure(d, tau, t):
    """sigma(C(x, tau) & C(z, tau)) for centres with x.z = t.

    As a function of t it is smooth except at t = 2 tau^2 - 1.

    Conditioning on u = x.y, the component of y orthogonal to x is uniform on
    S^(d-1); its coordinate along z has a symmetric Beta(lam, lam) law on
    [-1, 1], which gives the inner probability in closed form.
    """
    lam = (d - 1) / 2.0
    mass = math.exp(0.5 * math.log(math.pi) + gammaln(lam + 0.5) - gammaln(lam + 1.0))
    t = float(np.clip(t, -1.0, 1.0))
    s = math.sqrt(max(0.0, 1.0 - t * t))
    alpha = math.acos(tau)
    theta = math.acos(t)

    def inner(phi):
        u, su = math.cos(phi), math.sin(phi)
        if s * su == 0.0:
            return 1.0 if t * u >= tau else 0.0
        thr = (tau - t * u) / (s * su)
        if thr <= -1.0:
            return 1.0
        if thr >= 1.0:
            return 0.0
        return 1.0 - float(betainc(lam, lam, (1.0 + thr) / 2.0))

    pts = sorted({p for p in (abs(theta - alpha), theta + alpha, 2 * math.pi - theta - alpha) if 0 < p < alpha})
    # when theta = alpha the square-root kink of the inner term sits on an endpoint and
    # quad reports (harmless) slow convergence
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, _ = integrate.quad(
            lambda phi: inner(phi) * math.sin(phi) ** (2 * lam), 0.0, alpha,
            points=pts or None, epsabs=1e-13, epsrel=1e-12, limit=200,
        )
    return val / mass


def synthesize_energy_profile(ctx, f, L):
    """Energy profile F = sum_{n<=L} hat f(n)^2 E_n, so that hat F = hat f^2."""
    hat = hat_transform(ctx, f, L).values
    return ProfileFunction.series(hat**2, ctx.d)


def _pair_mean(ps, func):
    """1/N^2 sum_{i,j} func(z_i . z_j) using the symmetry of the Gram matrix."""
    g = gram_matrix(ps)
    N = ps.n
    iu, ju = np.triu_indices(N, k=1)
    off = func(g[iu, ju]) if iu.size else np.zeros(0)
    return float((N * float(func(np.array([1.0]))[0]) + 2.0 * np.sum(off)) / N**2)


@dataclass
class GeneralizedStolarskyReport:
    lhs: float
    rhs: float
    difference: float
    truncation_bound: float
    holds: bool
    independent: bool


def generalized_stolarsky_check(ctx, f, ps, L, atol=1e-8):
    """Compare the spectral discrepancy with the energy form of the identity.

    The energy side uses the exact energy profile whenever it is available
    independently of the truncated expansion: for ``series`` profiles the
    profile of squared coefficients, for caps the cap-intersection measure.
    Other profiles fall back to the truncated synthesis (``independent`` is
    then False).
    """
    if not isinstance(f, ProfileFunction):
        f = ProfileFunction.numeric(f)
    lhs_res = discrepancy_l2(ctx, f, ps, "spectral", L)
    lhs = lhs_res.squared
    independent = True
    if f.kind == "series":
        F = ProfileFunction.series(f.coefficients**2, ctx.d)
        rhs = _pair_mean(ps, F) - hat_transform(ctx, F, 0).values[0]
    elif f.kind == "cap":
        cache = {}

        def F(ts):
            out = np.empty(np.shape(ts))
            for idx, tv in np.ndenumerate(np.asarray(ts)):
                key = round(float(tv), 15)
                if key not in cache:
                    cache[key] = cap_intersection_measure(ctx.d, f.tau, key)
                out[idx] = cache[key]
            return out

        # the two caps start to overlap at angle 2 alpha (or stop being disjoint at 2 pi - 2 alpha)
        alpha = math.acos(f.tau)
        kink = min(2 * alpha, 2 * math.pi - 2 * alpha)
        t, w = angular_rule(ctx.lam, [0.0, kink, math.pi], 64)
        integral = float(np.dot(w, F(t)) / ctx.mass)
        rhs = _pair_mean(ps, F) - integral
    else:
        F = synthesize_energy_profile(ctx, f, L)
        rhs = _pair_mean(ps, F) - hat_transform(ctx, F, 0).values[0]
        independent = False
    rhs = float(rhs)
    diff = rhs - lhs
    tol = lhs_res.truncation_bound + atol
    return GeneralizedStolarskyReport(lhs, rhs, diff, lhs_res.truncation_bound, bool(abs(diff) <= tol), independent)


def corollary_rhs(ps, d=None):
    """sum_{i,j} log(2 + N^(1/d) r_ij) / (1 + N^(1/d) r_ij)^(d+1)."""
    d = ps.d if d is None else d
    return clustering_energy(ps, ps.n ** (1.0 / d), d)


@dataclass
class BeckReport:
    lhs: float
    rhs: float
    ratio: float


def beck_refined_check(ps, d=None, c_d=None):
    """Cap discrepancy (via Stolarsky) against N^(-2-1/d) * corollary_rhs."""
    d = ps.d if d is None else d
    lhs = cap_discrepancy_stolarsky(ps, c_d)
    rhs = ps.n ** (-2.0 - 1.0 / d) * corollary_rhs(ps, d)
    return BeckReport(lhs, rhs, lhs / rhs)


@dataclass
class EnergyReport:
    discrete_energy: float
    integral_energy: float
    difference: float
    clustering_rhs: float
    fitted_constant: float
    min_hat: float
    degree_cap: int


def energy_gap_report(ctx, F, ps, L, c_prime=DEFAULT_C_PRIME, rtol=1e-12):
    """Discrete energy minus energy integral, with the clustering lower-bound term.

    Raises :class:`NotPositiveDefiniteError` if some hat F(n), 1 <= n <= L, is
    negative beyond rounding.
    """
    ps.require("sphere")
    if not isinstance(F, ProfileFunction):
        F = ProfileFunction.numeric(F)
    hat = hat_transform(ctx, F, L).values
    tol = rtol * max(1.0, float(np.max(np.abs(hat))))
    if L >= 1 and np.any(hat[1:] < -tol):
        n_bad = int(np.argmin(hat[1:])) + 1
        raise NotPositiveDefiniteError(f"hat F({n_bad}) = {hat[n_bad]:.3g} < 0")
    discrete = _pair_mean(ps, F)
    integral = float(hat[0])
    diff = discrete - integral
    N, d = ps.n, ps.d
    cap = max(1, min(L, int(math.floor(c_prime * N ** (1.0 / d)))))
    min_hat = float(np.min(hat[1 : cap + 1])) if L >= 1 else 0.0
    rhs = min_hat * corollary_rhs(ps, d) / N
    fitted = diff / rhs if rhs > 0 else math.inf
    return EnergyReport(discrete, integral, diff, rhs, fitted, min_hat, cap)
