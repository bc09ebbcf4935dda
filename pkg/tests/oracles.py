"""Independent reference computations used by the tests.

Nothing here calls into montlab's numerical code paths; each oracle uses a
different formula or a brute-force evaluation.
"""

import math

import mpmath
import numpy as np
from scipy import integrate
from scipy.special import betainc, eval_gegenbauer


def gegenbauer_explicit(n, lam, t, dps=40):
    """C_n^lam(t) from the explicit finite sum, in extended precision."""
    mpmath.mp.dps = dps
    lam = mpmath.mpf(lam)
    t = mpmath.mpf(t)
    total = mpmath.mpf(0)
    for k in range(n // 2 + 1):
        total += (-1) ** k * mpmath.gamma(n - k + lam) / (mpmath.gamma(lam) * mpmath.factorial(k) * mpmath.factorial(n - 2 * k)) * (2 * t) ** (n - 2 * k)
    return float(total)


def gegenbauer_scipy(n, lam, t):
    return eval_gegenbauer(n, lam, t)


def weight_mass_quad(lam):
    return integrate.quad(lambda t: (1 - t * t) ** (lam - 0.5), -1, 1, epsabs=1e-14)[0]


def beta_mass(lam):
    return math.exp(math.lgamma(0.5) + math.lgamma(lam + 0.5) - math.lgamma(lam + 1))


def cap_hat_closed_form(n, d, tau):
    """Funk-Hecke multiplier of the cap indicator [tau, 1] on S^d.

    Uses int_tau^1 C_n^lam w = 2 lam / (n (n + 2 lam)) (1 - tau^2)^(lam + 1/2) C_{n-1}^(lam + 1)(tau),
    which follows from the Rodrigues formula.
    """
    lam = (d - 1) / 2.0
    mass = beta_mass(lam)
    if n == 0:
        return float(betainc(lam + 0.5, lam + 0.5, (1 - tau) / 2))
    c_one = math.comb(n + int(2 * lam) - 1, n) if float(2 * lam).is_integer() else math.exp(
        math.lgamma(n + 2 * lam) - math.lgamma(n + 1) - math.lgamma(2 * lam))
    integral = 2 * lam / (n * (n + 2 * lam)) * (1 - tau * tau) ** (lam + 0.5) * eval_gegenbauer(n - 1, lam + 1, tau)
    return integral / (c_one * mass)


def cap_l2_riemann(n, d, step=1e-4):
    """int_{-1}^{1} hat f_tau(n)^2 dtau by a midpoint Riemann sum."""
    taus = np.arange(-1 + step / 2, 1, step)
    vals = np.array([cap_hat_closed_form(n, d, t) for t in taus])
    return float(np.sum(vals**2) * step)


def harmonic_dimension_brute(d, n):
    """dim H_n(S^d) = dim P_n - dim P_{n-2} for homogeneous polynomials in d + 1 variables."""
    def homog(m):
        return math.comb(m + d, d) if m >= 0 else 0

    return homog(n) - homog(n - 2)


def cesaro_a_lgamma(delta, j):
    return math.exp(math.lgamma(j + delta + 1) - math.lgamma(j + 1) - math.lgamma(delta + 1))


def distance_integral_quad(d):
    """J_d = sigma-mean of |x - y| = 2 sin(theta / 2) against sin^(d-1) theta dtheta / mass."""
    lam = (d - 1) / 2.0
    num = integrate.quad(lambda th: 2 * math.sin(th / 2) * math.sin(th) ** (2 * lam), 0, math.pi, epsabs=1e-15, epsrel=1e-13)[0]
    return num / beta_mass(lam)


def cube_sum_brute(points, weights, X):
    """sum over k in [-X, X]^d of |sum_n a_n exp(2 pi i k.x_n)|^2, one frequency at a time."""
    d = points.shape[1]
    total = 0.0
    for k in np.ndindex(*([2 * X + 1] * d)):
        kk = np.array(k) - X
        s = np.sum(weights * np.exp(2j * math.pi * points @ kk))
        total += abs(s) ** 2
    return total


def count_window_brute(points, weights, X):
    """First X + 1 real eigenfunctions, enumerated by brute force over a generous box."""
    d = points.shape[1]
    R = int(math.ceil(X ** (1.0 / d))) + 3
    reps = []
    for k in np.ndindex(*([2 * R + 1] * d)):
        kk = tuple(int(v) - R for v in k)
        nz = [v for v in kk if v != 0]
        if nz and nz[0] > 0:
            reps.append((sum(v * v for v in kk), kk))
    reps.sort()
    funcs = [lambda x: np.ones(len(x))]
    for _, kk in reps:
        kv = np.array(kk, dtype=float)
        funcs.append(lambda x, kv=kv: math.sqrt(2) * np.cos(2 * math.pi * x @ kv))
        funcs.append(lambda x, kv=kv: math.sqrt(2) * np.sin(2 * math.pi * x @ kv))
    return sum(float(np.dot(weights, f(points))) ** 2 for f in funcs[: X + 1])


def heat_kernel_images(x, y, t, R=30):
    """Periodised Gaussian with a fixed, generous image box."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    d = x.size
    diff = x - y
    total = 0.0
    for m in np.ndindex(*([2 * R + 1] * d)):
        mm = np.array(m) - R
        total += math.exp(-np.sum((diff - mm) ** 2) / (4 * t))
    return total / (4 * math.pi * t) ** (d / 2)


def clustering_brute(points, scale, d):
    total = 0.0
    for p in points:
        for q in points:
            r = float(np.linalg.norm(p - q))
            total += math.log(2 + scale * r) / (1 + scale * r) ** (d + 1)
    return total
