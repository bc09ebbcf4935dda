import math

import numpy as np
import pytest

import oracles
from montlab import discrepancy as disc
from montlab.errors import DomainError, NotPositiveDefiniteError, StateError
from montlab.gegenbauer import GegenbauerContext, hat_transform
from montlab.pointsets import GeneratorSpec, generate, sphere_set
from montlab.profiles import ProfileFunction
from montlab.sphere import montgomery_sums


@pytest.fixture(scope="module")
def ctx2():
    return GegenbauerContext(2, 128)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_distance_integral(d):
    assert disc.distance_integral(d) == pytest.approx(oracles.distance_integral_quad(d), rel=1e-12)


def test_distance_integral_d2():
    assert abs(disc.distance_integral(2) - 4 / 3) <= 1e-12


def test_running_moments_merge_is_order_free():
    rng = np.random.default_rng(0)
    parts = [rng.random(n) for n in (5, 17, 1, 40)]
    a = disc.RunningMoments()
    for p in parts:
        a = a.merge(disc.RunningMoments.of(p))
    b = disc.RunningMoments()
    for p in reversed(parts):
        b = disc.RunningMoments.of(p).merge(b)
    allv = np.concatenate(parts)
    assert a.mean == pytest.approx(allv.mean()) and b.mean == pytest.approx(allv.mean())
    assert a.stderr == pytest.approx(allv.std(ddof=1) / math.sqrt(allv.size))
    assert a.m2 == pytest.approx(b.m2)


def test_single_mode_discrepancy(ctx2):
    ps = generate(GeneratorSpec("fibonacci", 12))
    f = ProfileFunction.series([0.0, 0.0, 0.8], 2)
    res = disc.discrepancy_l2(ctx2, f, ps, "spectral", 10)
    S = montgomery_sums(ctx2, ps, 2)
    assert res.squared == pytest.approx(0.64 * S[2] / 144, rel=1e-13)
    assert res.truncation_bound == 0.0


def test_single_point_cap(ctx2):
    """N=1, cap of half the sphere: D^2 = sigma(cap)(1 - sigma(cap)) = 1/4."""
    ps = sphere_set([[0, 0, 1.0]])
    spec = disc.discrepancy_l2(ctx2, ProfileFunction.cap(0.0), ps, "spectral", 128)
    assert spec.squared <= 0.25 <= spec.squared + spec.truncation_bound + 1e-15
    mc = disc.discrepancy_l2(ctx2, ProfileFunction.cap(0.0), ps, "montecarlo", samples=20_000, seed=3)
    assert mc.squared == pytest.approx(0.25)


def test_spectral_vs_montecarlo(ctx2):
    ps = generate(GeneratorSpec("uniform", 30, seed=9))
    f = ProfileFunction.cap(0.3)
    spec = disc.discrepancy_l2(ctx2, f, ps, "spectral", 128)
    mc = disc.discrepancy_l2(ctx2, f, ps, "montecarlo", samples=200_000, seed=1)
    assert abs(spec.squared - mc.squared) <= 3 * mc.stderr + spec.truncation_bound


def test_montecarlo_deterministic(ctx2):
    ps = generate(GeneratorSpec("uniform", 10, seed=2))
    f = ProfileFunction.cap(0.1)
    a = disc.discrepancy_l2(ctx2, f, ps, "montecarlo", samples=70_000, seed=5)
    b = disc.discrepancy_l2(ctx2, f, ps, "montecarlo", samples=70_000, seed=5)
    assert a.squared == b.squared and a.stderr == b.stderr


def test_unknown_method(ctx2):
    with pytest.raises(DomainError):
        disc.discrepancy_l2(ctx2, ProfileFunction.cap(0.0), sphere_set([[1, 0, 0]]), "quadrature")


def test_cap_primitive_matches_quadrature():
    from scipy import integrate

    for d in (2, 3):
        for u in (-0.7, 0.0, 0.4):
            ref = integrate.quad(lambda s: float(disc.cap_measure(d, s)), -1, u, epsabs=1e-14)[0]
            assert disc._cap_primitive(d, u) == pytest.approx(ref, rel=1e-9)


def test_direct_cap_discrepancy_single_point():
    """N=1 on S^2: int (1{u>=tau} - (1-tau)/2)^2 dtau averaged over u is 1/3."""
    val, se = disc.cap_discrepancy_direct(sphere_set([[0, 0, 1.0]]), 200_000, seed=4)
    assert abs(val - 1 / 3) <= 3 * se + 1e-12


def test_stolarsky_constant_exact():
    assert disc.stolarsky_constant_exact(GegenbauerContext(2, 4)) == pytest.approx(4.0, rel=1e-12)


def test_stolarsky_against_direct():
    ps = generate(GeneratorSpec("uniform", 60, seed=21))
    d2, se = disc.cap_discrepancy_direct(ps, 300_000, seed=2)
    assert abs(4.0 * d2 - (disc.distance_integral(2) - disc.mean_pairwise_distance(ps))) <= 3 * 4.0 * se


def test_stolarsky_state():
    disc._calibrated.pop(5, None)
    ps = generate(GeneratorSpec("uniform", 3, d=5, seed=1))
    with pytest.raises(StateError):
        disc.cap_discrepancy_stolarsky(ps)
    disc.set_stolarsky_constant(5, 2.0)
    assert disc.cap_discrepancy_stolarsky(ps) == pytest.approx(
        (disc.distance_integral(5) - disc.mean_pairwise_distance(ps)) / 2.0)
    disc._calibrated.pop(5)


def test_stolarsky_examples():
    one = sphere_set([[0, 0, 1.0]])
    assert disc.cap_discrepancy_stolarsky(one, 4.0) == pytest.approx(disc.distance_integral(2) / 4.0)
    pair = sphere_set([[0, 0, 1.0], [0, 0, -1.0]])
    assert disc.cap_discrepancy_stolarsky(pair, 4.0) == pytest.approx((4 / 3 - 1) / 4.0)


def test_cap_intersection_measure():
    assert disc.cap_intersection_measure(2, 0.0, 1.0) == pytest.approx(0.5)
    assert disc.cap_intersection_measure(2, 0.0, -1.0) == pytest.approx(0.0, abs=1e-14)
    # two orthogonal hemispheres meet in a quarter sphere
    assert disc.cap_intersection_measure(2, 0.0, 0.0) == pytest.approx(0.25)
    assert disc.cap_intersection_measure(3, 0.0, 0.0) == pytest.approx(0.25)


def test_cap_intersection_hat_is_square(ctx2):
    """hat F = hat f^2 for the cap-intersection profile (checked up to degree 12)."""
    ctx = GegenbauerContext(3, 40)
    tau = 0.3
    F = ProfileFunction.numeric(
        np.vectorize(lambda t: disc.cap_intersection_measure(3, tau, t)), breakpoints=[2 * tau * tau - 1]
    )
    hF = hat_transform(ctx, F, 12).values
    hf = hat_transform(ctx, ProfileFunction.cap(tau), 12).values
    assert np.allclose(hF, hf**2, rtol=0, atol=1e-13)


def test_synthesis_round_trip(ctx2):
    f = ProfileFunction.numeric(lambda t: np.exp(t))
    F = disc.synthesize_energy_profile(ctx2, f, 40)
    hf = hat_transform(ctx2, f, 40).values
    assert np.allclose(hat_transform(ctx2, F, 40).values, hf**2, rtol=1e-11, atol=1e-15)


def test_generalized_stolarsky_series(ctx2):
    ps = generate(GeneratorSpec("uniform", 40, seed=6))
    f = ProfileFunction.series([0, 0, 0, 1.0], 2)
    rep = disc.generalized_stolarsky_check(ctx2, f, ps, 10)
    assert rep.independent and abs(rep.difference) <= 1e-8


def test_generalized_stolarsky_constant(ctx2):
    ps = generate(GeneratorSpec("uniform", 10, seed=6))
    rep = disc.generalized_stolarsky_check(ctx2, ProfileFunction.series([1.0], 2), ps, 8)
    assert rep.lhs == pytest.approx(0, abs=1e-14) and rep.rhs == pytest.approx(0, abs=1e-14)


def test_corollary_rhs_examples():
    assert disc.corollary_rhs(sphere_set([[1, 0, 0]])) == pytest.approx(math.log(2))
    same = sphere_set([[1, 0, 0]] * 5)
    assert disc.corollary_rhs(same) == pytest.approx(25 * math.log(2))


def test_energy_examples():
    ctx = GegenbauerContext(2, 16)
    one = sphere_set([[0, 0, 1.0]])
    rep = disc.energy_gap_report(ctx, ProfileFunction.numeric(lambda t: t * t), one, 8)
    assert rep.difference == pytest.approx(1 - 1 / 3)
    ps = generate(GeneratorSpec("uniform", 20, seed=1))
    const = disc.energy_gap_report(ctx, ProfileFunction.constant(3.0), ps, 8)
    assert const.difference == pytest.approx(0, abs=1e-13)
    with pytest.raises(NotPositiveDefiniteError):
        disc.energy_gap_report(ctx, ProfileFunction.numeric(lambda t: -t), ps, 8)


def test_distance_energy_matches_stolarsky():
    ctx = GegenbauerContext(2, 64)
    ps = generate(GeneratorSpec("uniform", 100, seed=13))
    rep = disc.energy_gap_report(ctx, disc.distance_profile(), ps, 64)
    gap = disc.distance_integral(2) - disc.mean_pairwise_distance(ps)
    assert rep.difference == pytest.approx(gap, rel=1e-10)
    assert rep.difference > 0 and rep.fitted_constant > 0
