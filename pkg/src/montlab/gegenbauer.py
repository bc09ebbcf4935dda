"""Gegenbauer polynomials, quadrature for the ultraspherical weight and hat transforms.

Conventions
-----------
For the sphere S^d the index is ``lam = (d - 1) / 2`` and the weight is
``w(t) = (1 - t^2)^(lam - 1/2)`` on [-1, 1].  All sphere integrals use the
probability measure sigma, so integrals against ``w`` are divided by the
total mass ``B(1/2, lam + 1/2)``.

``E_n(t) = (n + lam) / lam * C_n(t)`` is the reproducing kernel of the
degree-n harmonics: ``E_n(x.y) = sum_k Y_nk(x) Y_nk(y)`` and ``E_n(1) = d_n``.

The hat coefficient of a profile ``f`` is its Funk-Hecke multiplier

    hat f(n) = 1/mass * int f(t) C_n(t) / C_n(1) w(t) dt,

so that ``f(t) = sum_n hat f(n) E_n(t)``, ``hat f(0)`` is the sigma-mean of
``f(x . y)`` and ``int f(x.y) Y_n(y) dsigma(y) = hat f(n) Y_n(x)``.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .errors import DomainError, EvaluationError, UnsupportedDimensionError
from .profiles import ProfileFunction

MAX_DEGREE = 256


def weight_mass(lam):
    """int_{-1}^{1} (1 - t^2)^(lam - 1/2) dt = B(1/2, lam + 1/2)."""
    return math.exp(0.5 * math.log(math.pi) + gammaln(lam + 0.5) - gammaln(lam + 1.0))


def weight_moment(lam, m):
    """int t^m w(t) dt, closed form through the Beta function."""
    if m % 2:
        return 0.0
    return math.exp(gammaln((m + 1) / 2) + gammaln(lam + 0.5) - gammaln(m / 2 + lam + 1.0))


def gauss_gegenbauer(n, lam):
    """Gauss rule with ``n`` nodes for the weight (1 - t^2)^(lam - 1/2).

    Built from the symmetric Jacobi matrix of the monic recurrence
    (Golub-Welsch).  Exact for polynomials of degree ``2n - 1``.
    """
    k = np.arange(1, n, dtype=float)
    beta = k * (k + 2 * lam - 1) / (4.0 * (k + lam) * (k + lam - 1))
    jac = np.diag(np.sqrt(beta), 1) + np.diag(np.sqrt(beta), -1)
    nodes, vecs = np.linalg.eigh(jac)
    weights = weight_mass(lam) * vecs[0] ** 2
    # symmetrise to remove eigen-solver noise
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    return nodes, weights


def gegenbauer_table(n_max, lam, t):
    """C_0^lam(t), ..., C_{n_max}^lam(t) stacked along a new leading axis."""
    t = np.asarray(t, dtype=float)
    out = np.empty((n_max + 1,) + t.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 2.0 * lam * t
    for n in range(2, n_max + 1):
        out[n] = (2.0 * t * (n + lam - 1) * out[n - 1] - (n + 2 * lam - 2) * out[n - 2]) / n
    return out


def gegenbauer_at_one(n_max, lam):
    """C_n^lam(1) = binom(n + 2 lam - 1, n) for n = 0..n_max, by the ratio recurrence."""
    vals = np.ones(n_max + 1)
    for n in range(1, n_max + 1):
        vals[n] = vals[n - 1] * (n + 2 * lam - 1) / n
    return vals


def normalized_gegenbauer_table(n_max, lam, t):
    """E_n^lam(t) = (n + lam) / lam * C_n^lam(t) for n = 0..n_max."""
    if lam <= 0:
        raise UnsupportedDimensionError("E_n is undefined for lambda = 0 (d = 1)")
    table = gegenbauer_table(n_max, lam, t)
    n = np.arange(n_max + 1, dtype=float).reshape((-1,) + (1,) * np.ndim(t))
    return table * (n + lam) / lam


@dataclass(frozen=True, eq=False)
class HatCoefficients:
    lam: float
    values: np.ndarray

    def __len__(self):
        return self.values.size

    def __getitem__(self, n):
        return self.values[n]


@dataclass(frozen=True, eq=False)
class GegenbauerContext:
    """Dimension-dependent data shared by all sphere computations.

    Parameters
    ----------
    d : int
        Sphere dimension (S^d sits in R^(d+1)).
    max_degree : int
        Largest polynomial degree any caller may request, at most 256.
    """

    d: int
    max_degree: int = 64
    lam: float = field(init=False)
    nodes: np.ndarray = field(init=False, repr=False)
    weights: np.ndarray = field(init=False, repr=False)
    mass: float = field(init=False, repr=False)

    def __post_init__(self):
        if self.d < 1:
            raise UnsupportedDimensionError(f"d must be >= 1, got {self.d}")
        if not 0 <= self.max_degree <= MAX_DEGREE:
            raise DomainError(f"max_degree must lie in [0, {MAX_DEGREE}]")
        lam = (self.d - 1) / 2.0
        object.__setattr__(self, "lam", lam)
        if lam > 0:
            nodes, weights = gauss_gegenbauer(self.max_degree + 3, lam)
        else:
            nodes, weights = np.empty(0), np.empty(0)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "mass", weight_mass(lam) if lam > 0 else math.pi)

    @property
    def quadrature(self):
        """(node, weight) pairs of the Gauss rule for w_lambda."""
        return list(zip(self.nodes.tolist(), self.weights.tolist()))

    def _require_lambda(self):
        if self.lam <= 0:
            raise UnsupportedDimensionError("d = 1 (lambda = 0) is not supported on the sphere")

    def _check_degree(self, n):
        if not 0 <= n <= self.max_degree:
            raise DomainError(f"degree {n} outside [0, {self.max_degree}]")

    def C(self, n, t):
        """Gegenbauer polynomial C_n^lambda(t) by the three-term recurrence."""
        self._check_degree(n)
        t = _check_t(t)
        return gegenbauer_table(n, self.lam, t)[n]

    def E(self, n, t):
        self._require_lambda()
        self._check_degree(n)
        t = _check_t(t)
        return normalized_gegenbauer_table(n, self.lam, t)[n]

    def E_table(self, L, t):
        """E_0(t), ..., E_L(t); ``t`` may be any array of inner products."""
        self._require_lambda()
        self._check_degree(L)
        return normalized_gegenbauer_table(L, self.lam, _check_t(t))

    def dims(self, L):
        """E_n(1) = dim H_n for n = 0..L (floating point)."""
        self._require_lambda()
        n = np.arange(L + 1)
        return gegenbauer_at_one(L, self.lam) * (n + self.lam) / self.lam

    def integrate(self, values):
        """sigma-average of g(x.y) given g sampled at ``self.nodes``."""
        return float(np.dot(self.weights, values) / self.mass)


def _check_t(t):
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > 1.0 + 1e-12):
        raise DomainError("inner products must lie in [-1, 1]")
    return np.clip(t, -1.0, 1.0)


def _angular_nodes(theta_a, theta_b, m):
    x, w = np.polynomial.legendre.leggauss(m)
    half = 0.5 * (theta_b - theta_a)
    return theta_a + half * (x + 1.0), half * w


def angular_rule(lam, theta_edges, m):
    """Composite Gauss-Legendre rule in theta for int g(cos theta) sin^(2 lam) theta dtheta.

    With ``t = cos theta`` this equals int g(t) w(t) dt.  For ``2 lam`` integer
    the integrand is a trigonometric polynomial whenever ``g`` is a
    polynomial, so no endpoint singularity of the weight survives.

    Returns the nodes in ``t`` and the weights already multiplied by the
    Jacobian and ``sin^(2 lam)``.
    """
    ts, ws = [], []
    for a, b in zip(theta_edges[:-1], theta_edges[1:]):
        if b - a <= 0:
            continue
        th, w = _angular_nodes(a, b, m)
        ts.append(np.cos(th))
        ws.append(w * np.sin(th) ** (2 * lam))
    if not ts:
        return np.empty(0), np.empty(0)
    return np.concatenate(ts), np.concatenate(ws)


def _angular_node_count(L, extra_degree=0):
    return int(L + extra_degree + 48)


def hat_from_samples(ctx, L, t, w, fvals):
    """Hat coefficients 0..L from samples of ``f`` on a rule (t, w) for w_lambda."""
    if not np.all(np.isfinite(fvals)):
        raise EvaluationError("profile returned non-finite values at quadrature nodes")
    ctx._require_lambda()
    table = gegenbauer_table(L, ctx.lam, t)
    c1 = gegenbauer_at_one(L, ctx.lam)
    raw = table @ (w * fvals)
    return raw / (c1 * ctx.mass)


def cap_hat(ctx, tau, L):
    """Hat coefficients 0..L of the cap indicator of [tau, 1]."""
    ctx._require_lambda()
    theta_max = math.acos(max(-1.0, min(1.0, tau)))
    t, w = angular_rule(ctx.lam, [0.0, theta_max], _angular_node_count(L))
    return hat_from_samples(ctx, L, t, w, np.ones_like(t))


def hat_transform(ctx, f, L):
    """Hat coefficients ``hat f(n, lambda)`` for n = 0..L.

    ``series`` profiles are integrated with the Gauss-Gegenbauer rule of the
    context (exact); caps and numeric profiles use a composite angular rule
    split at the profile's breakpoints.
    """
    ctx._require_lambda()
    if not 0 <= L <= ctx.max_degree:
        raise DomainError(f"L={L} exceeds max_degree={ctx.max_degree}")
    if not isinstance(f, ProfileFunction):
        f = ProfileFunction.numeric(f)
    if f.kind == "cap":
        values = cap_hat(ctx, f.tau, L)
    elif f.kind == "series":
        if f.degree > ctx.max_degree:
            raise DomainError("series degree exceeds context max_degree")
        if f.d != ctx.d:
            raise DomainError(f"series built for d={f.d}, context has d={ctx.d}")
        values = hat_from_samples(ctx, L, ctx.nodes, ctx.weights, f(ctx.nodes))
    else:
        edges = [0.0] + sorted(math.acos(b) for b in f.breakpoints) + [math.pi]
        t, w = angular_rule(ctx.lam, edges, _angular_node_count(L, 32))
        values = hat_from_samples(ctx, L, t, w, f(t))
    return HatCoefficients(ctx.lam, values)


def cap_hat_l2_average(ctx, n):
    """int_{-1}^{1} |hat f_tau(n)|^2 dtau for the cap indicators f_tau.

    As a function of tau, hat f_tau(n) is (1 - tau^2)^(d/2) times a polynomial
    of degree n - 1, so a Gauss-Legendre rule with n + d + 8 nodes in tau is
    exact up to rounding.
    """
    ctx._require_lambda()
    if n < 1:
        raise DomainError("cap hat average needs n >= 1")
    ctx._check_degree(n)
    taus, wt = np.polynomial.legendre.leggauss(n + ctx.d + 8)
    vals = np.array([cap_hat(ctx, tau, n)[n] for tau in taus])
    return float(np.dot(wt, vals ** 2))
