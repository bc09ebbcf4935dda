import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from montlab.errors import DomainError, RegimeError, WrongSpaceError
from montlab.pointsets import GeneratorSpec, generate, make_rng, sphere_set, torus_set
from montlab.torus import (
    SpectrumWindow,
    calibrate_tail_constant,
    exact_tail,
    exponential_sum_spectrum,
    heat_comparison_diagnostic,
    heat_kernel,
    heat_kernel_spectral,
    heat_quadratic_form,
    log_exact_tail,
    log_tail_bound,
    montgomery_lemma_check,
    real_spectrum,
    tail_bound,
    theorem1_functional,
    time_choice,
)


def _random_set(n, d, seed, weighted=False):
    return generate(GeneratorSpec("torus-random", n, space="torus", d=d, seed=seed, weighted=weighted))


@pytest.mark.parametrize("d", [1, 2])
def test_cube_window_brute(d):
    ps = _random_set(7, d, 3, weighted=True)
    X = 5
    total = float(np.sum(exponential_sum_spectrum(ps, SpectrumWindow(d, "cube", X))))
    assert total == pytest.approx(oracles.cube_sum_brute(ps.points, ps.weights, X), rel=1e-11)


@pytest.mark.parametrize("d,X", [(1, 9), (1, 40), (2, 12), (2, 33)])
def test_count_window_brute(d, X):
    ps = _random_set(9, d, 5, weighted=True)
    total = float(np.sum(exponential_sum_spectrum(ps, SpectrumWindow(d, "count", X))))
    assert total == pytest.approx(oracles.count_window_brute(ps.points, ps.weights, X), rel=1e-11)


def test_real_spectrum_order():
    spec = real_spectrum(2, count=9)
    assert spec.kind.tolist() == [0, 1, 2, 1, 2, 1, 2, 1, 2]
    assert spec.k[1].tolist() == [0, 1] and spec.k[3].tolist() == [1, 0]
    assert np.all(np.diff(spec.eigenvalues) >= 0)


def test_parseval_grid():
    """A full grid annihilates every frequency except multiples of the grid size."""
    ps = generate(GeneratorSpec("torus-grid", 16, space="torus"))
    cube = exponential_sum_spectrum(ps, SpectrumWindow(2, "cube", 3))
    nonzero = np.argwhere(cube > 1e-9) - 3
    assert {tuple(k) for k in nonzero} == {(0, 0)}
    assert cube[3, 3] == pytest.approx(256.0)


def test_montgomery_lemma_single_point():
    rep = montgomery_lemma_check(torus_set([[0.1, 0.7]]), 4)
    assert rep.lhs == pytest.approx(81.0)
    assert rep.holds


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32), n=st.integers(1, 60), X=st.integers(1, 20))
def test_montgomery_lemma_property(seed, n, X):
    rep = montgomery_lemma_check(_random_set(n, 2, seed), X)
    assert rep.lhs >= n * X**2 * (1 - 1e-9)


def test_theorem1_examples():
    rep = theorem1_functional(torus_set([[0.3]]), 10)
    assert rep.lhs == pytest.approx(11.0)
    with pytest.raises(DomainError):
        theorem1_functional(torus_set([[0.3]]), 1)
    with pytest.raises(WrongSpaceError):
        theorem1_functional(sphere_set([[0, 0, 1.0]]), 10)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32), d=st.sampled_from([1, 2]), logt=st.floats(-3, 0))
def test_poisson_equivalence(seed, d, logt):
    rng = make_rng(seed)
    x, y = rng.random(d), rng.random(d)
    t = 10.0**logt
    assert abs(heat_kernel(x, y, t, d) - heat_kernel_spectral(x, y, t, d)) <= 1e-12


@pytest.mark.parametrize("d,t", [(1, 0.01), (1, 0.5), (2, 0.003), (2, 0.2)])
def test_heat_kernel_images(d, t):
    rng = make_rng(8)
    x, y = rng.random(d), rng.random(d)
    assert heat_kernel(x, y, t, d) == pytest.approx(oracles.heat_kernel_images(x, y, t, R=12), rel=1e-13)


def test_heat_kernel_integrates_to_one():
    t = 0.02
    xs = (np.arange(400) + 0.5) / 400
    vals = heat_kernel(xs[:, None], np.zeros(1), t, 1)
    assert np.mean(vals) == pytest.approx(1.0, rel=1e-12)


def test_heat_quadratic_form_positive():
    ps = _random_set(25, 2, 2, weighted=True)
    assert heat_quadratic_form(ps, 0.01) > 0


def test_tail_bound_regime():
    with pytest.raises(RegimeError):
        tail_bound(10, 0.01, 1)
    assert tail_bound(40, 0.01, 1) > 0


@pytest.mark.parametrize("d", [1, 2])
def test_tail_bound_dominates_exact(d):
    for X in (16, 64, 256):
        for a in (4.0, 8.0, 20.0):
            t = a / X ** (2.0 / d)
            assert log_exact_tail(X, t, d) <= log_tail_bound(X, t, d)


def test_exact_tail_small():
    assert 0 < exact_tail(64, 3 * 4 / 64**2, 1) < 1e-40


def test_calibration_returns_default():
    assert calibrate_tail_constant(1) == 1.0
    assert calibrate_tail_constant(2) == 1.0


def test_time_choice():
    t, A = time_choice(100, 2)
    assert A == pytest.approx(1.5)
    assert t == pytest.approx(1.5 * math.log(100) / 100)


@pytest.mark.parametrize("d,X,n,weighted", [(1, 200, 1, False), (1, 300, 20, True), (2, 500, 30, False)])
def test_heat_chain_links(d, X, n, weighted):
    rep = heat_comparison_diagnostic(_random_set(n, d, 4, weighted), X)
    assert all(rep.checks.values()), rep.checks
    assert rep.margin >= 0
