import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from montlab.errors import DomainError, UnsupportedDimensionError, WrongSpaceError
from montlab.gegenbauer import GegenbauerContext
from montlab.pointsets import GeneratorSpec, generate, make_rng, sphere_set, torus_set, uniform_sphere
from montlab.sphere import (
    clustering_energy,
    explicit_harmonics_sum,
    harmonic_dimension,
    kernel_lower_bound_sum,
    kernel_sum_from_spectrum,
    montgomery_sums,
    theorem2_lhs,
    theorem2_rhs,
)


@settings(max_examples=50, deadline=None)
@given(d=st.integers(2, 8), n=st.integers(0, 200))
def test_harmonic_dimension_brute(d, n):
    assert harmonic_dimension(d, n) == oracles.harmonic_dimension_brute(d, n)


def test_harmonic_dimension_examples():
    assert [harmonic_dimension(2, n) for n in range(5)] == [1, 3, 5, 7, 9]
    assert harmonic_dimension(3, 2) == 9
    with pytest.raises(OverflowError):
        harmonic_dimension(40, 256)
    with pytest.raises(DomainError):
        harmonic_dimension(1, 3)


@pytest.fixture(scope="module")
def ctx2():
    return GegenbauerContext(2, 64)


def test_single_point(ctx2):
    ps = sphere_set([[0, 0, 1.0]])
    assert np.allclose(montgomery_sums(ctx2, ps, 8), ctx2.dims(8))


def test_antipodal_pair_kills_odd_degrees(ctx2):
    ps = sphere_set([[0, 0, 1.0], [0, 0, -1.0]])
    S = montgomery_sums(ctx2, ps, 9)
    assert np.allclose(S[1::2], 0, atol=1e-12)
    assert np.allclose(S[0::2], 2 * 2 * ctx2.dims(9)[0::2])


def test_addition_formula_oracle(ctx2):
    rng = make_rng(11)
    for _ in range(10):
        n = int(rng.integers(1, 31))
        ps = sphere_set(uniform_sphere(n, 2, rng), rng.random(n))
        gram = montgomery_sums(ctx2, ps, 8)
        explicit = explicit_harmonics_sum(ps, 8)
        assert np.allclose(gram, explicit, rtol=0, atol=1e-8 * n * n)


def test_explicit_basis_limits():
    ps = generate(GeneratorSpec("uniform", 5, d=3, seed=1))
    with pytest.raises(UnsupportedDimensionError):
        explicit_harmonics_sum(ps, 4)
    with pytest.raises(UnsupportedDimensionError):
        explicit_harmonics_sum(generate(GeneratorSpec("uniform", 5, seed=1)), 9)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32), n=st.integers(1, 40), d=st.sampled_from([2, 3]))
def test_sums_nonnegative_and_bounded(seed, n, d):
    ctx = GegenbauerContext(d, 32)
    ps = generate(GeneratorSpec("uniform", n, d=d, seed=seed))
    S = montgomery_sums(ctx, ps, 32)
    assert np.all(S >= -1e-9 * n * n)
    assert np.all(S <= n * n * ctx.dims(32) * (1 + 1e-12))
    assert S[0] == pytest.approx(n * n)


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**32), n=st.integers(1, 30))
def test_rotation_invariance(seed, n):
    ctx = GegenbauerContext(3, 16)
    rng = make_rng(seed)
    pts = uniform_sphere(n, 3, rng)
    q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
    a = montgomery_sums(ctx, sphere_set(pts), 16)
    b = montgomery_sums(ctx, sphere_set(pts @ q.T), 16)
    assert np.allclose(a, b, rtol=1e-9, atol=1e-9 * n * n)


@pytest.mark.parametrize("d", [2, 3])
def test_kernel_chain(d):
    ctx = GegenbauerContext(d, 64)
    for seed in range(4):
        ps = generate(GeneratorSpec("uniform", 40, d=d, seed=seed))
        for L in (8, 32):
            S = montgomery_sums(ctx, ps, L)
            lhs = float(np.sum(S))
            g1 = kernel_lower_bound_sum(ctx, ps, L, 1)
            g2 = kernel_lower_bound_sum(ctx, ps, L, 2)
            assert lhs >= g1 - 1e-6 * 40**2
            assert g1 >= g2 - 1e-6 * 40**2
            assert g2 >= -1e-6 * 40**2
            assert g1 == pytest.approx(kernel_sum_from_spectrum(ctx, S, L, 1), rel=1e-10)
            assert g2 == pytest.approx(kernel_sum_from_spectrum(ctx, S, L, 2), rel=1e-10)


def test_clustering_energy_oracle():
    ps = generate(GeneratorSpec("uniform", 12, seed=4))
    assert clustering_energy(ps, 5.0) == pytest.approx(oracles.clustering_brute(ps.points, 5.0, 2), rel=1e-12)


def test_theorem2_single_point():
    ctx = GegenbauerContext(2, 16)
    ps = sphere_set([[1.0, 0, 0]])
    assert theorem2_lhs(ctx, ps, 4) == pytest.approx(25.0)
    assert theorem2_rhs(ps, 4) == pytest.approx(16 * math.log(2))


def test_wrong_space():
    ctx = GegenbauerContext(2, 8)
    with pytest.raises(WrongSpaceError):
        montgomery_sums(ctx, torus_set([[0.1, 0.2]]), 4)
