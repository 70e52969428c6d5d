import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sensorsim.seedstream import GaussianStream
from sensorsim.single_axis import (
    SingleAxisSpec,
    init_state,
    saturated_walk,
    sigma_u_from_stability,
    sigma_v_from_random_walk_spec,
    simulate_errors,
    step,
    theory_error_stats,
    theory_first_integral_stats,
    theory_second_integral_stats,
)

FIG = SingleAxisSpec(B0=1.6e-2, sigma_u=4e-3, sigma_v=1e-3, dt=0.01)


class FixedDraws:
    """Stand-in stream that replays given values."""

    def __init__(self, values):
        self.values = list(values)

    def normals(self, n):
        out, self.values = self.values[:n], self.values[n:]
        return np.array(out)

    def normal(self):
        return float(self.normals(1)[0])


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(B0=0, sigma_u=0, sigma_v=0, dt=0),
        dict(B0=-1, sigma_u=0, sigma_v=0, dt=0.01),
        dict(B0=0, sigma_u=-1, sigma_v=0, dt=0.01),
        dict(B0=0, sigma_u=0, sigma_v=0, dt=0.01, clamp_factor=0),
    ],
)
def test_spec_validation(kwargs):
    with pytest.raises(ValueError):
        SingleAxisSpec(**kwargs)


def test_init_state_examples():
    assert init_state(SingleAxisSpec(0, 1, 1, 0.01), GaussianStream(1)).offset_term == 0.0
    st_ = init_state(SingleAxisSpec(0.2, 0, 0, 0.01), FixedDraws([1.5]))
    assert st_.offset_term == pytest.approx(0.3)
    assert st_.walk_sum == 0.0 and st_.s == 0


def test_init_state_offset_std():
    spec = SingleAxisSpec(0.2, 0, 0, 0.01)
    offs = [init_state(spec, GaussianStream(s)).offset_term for s in range(10**4)]
    assert np.std(offs) == pytest.approx(0.2, rel=0.03)


def test_step_zero_spec_passthrough():
    spec = SingleAxisSpec(0, 0, 0, 0.01)
    stream = GaussianStream(3)
    state = init_state(spec, stream)
    for k in range(100):
        assert step(state, spec, 1.25 * k, stream) == 1.25 * k


def test_step_draw_order_drift_then_noise():
    spec = SingleAxisSpec(B0=1.0, sigma_u=2.0, sigma_v=3.0, dt=0.25)
    stream = FixedDraws([0.5, 1.0, -2.0])
    state = init_state(spec, stream)
    out = step(state, spec, 10.0, stream)
    # 10 + 1*0.5 + 2*sqrt(.25)*1 + 3/sqrt(.25)*(-2)
    assert out == pytest.approx(10 + 0.5 + 1.0 - 12.0)
    assert state.s == 1


def test_white_noise_std():
    spec = SingleAxisSpec(0, 0, 1e-3, 0.01)
    e = simulate_errors(spec, GaussianStream(11), 10**5)
    assert np.std(e) == pytest.approx(1e-2, rel=0.02)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**63), n=st.integers(1, 300), clamp=st.sampled_from([0.5, 3.0, 100.0, math.inf]))
def test_vectorized_matches_stepping(seed, n, clamp):
    spec = SingleAxisSpec(0.3, 0.7, 0.2, 0.05, clamp)
    fast = simulate_errors(spec, GaussianStream(seed), n)
    stream = GaussianStream(seed)
    state = init_state(spec, stream)
    slow = np.array([step(state, spec, 0.0, stream) for _ in range(n)])
    np.testing.assert_array_equal(fast, slow)


@settings(max_examples=50, deadline=None)
@given(
    increments=st.lists(st.floats(-5, 5, allow_nan=False), min_size=1, max_size=200),
    bound=st.floats(0.01, 10),
)
def test_saturated_walk_bound(increments, bound):
    w = saturated_walk(np.array(increments), bound)
    assert np.all(np.abs(w) <= bound)


def test_huge_clamp_equals_unclamped():
    spec = SingleAxisSpec(0.1, 0.5, 0.1, 0.01, clamp_factor=1e12)
    a = simulate_errors(spec, GaussianStream(4), 5000)
    b = simulate_errors(spec.unclamped(), GaussianStream(4), 5000)
    np.testing.assert_array_equal(a, b)


def test_theory_error_examples():
    assert theory_error_stats(SingleAxisSpec(0.5, 1, 0, 0.01), 0).variance == 0.25
    assert theory_error_stats(FIG, 1000).std == pytest.approx(0.12789, abs=5e-5)
    d1 = theory_error_stats(FIG, 100).components["drift"]
    d2 = theory_error_stats(FIG, 200).components["drift"]
    assert d2 == pytest.approx(2 * d1)
    assert theory_error_stats(FIG, 10).mean == 0.0


def test_theory_first_integral_examples():
    st_ = theory_first_integral_stats(FIG, 3.0, 1000)
    assert st_.mean == 3.0
    assert st_.std == pytest.approx(74.8, rel=1e-3)
    assert theory_first_integral_stats(FIG, 3.0, 0).variance == 0.0
    exact = theory_first_integral_stats(FIG, 3.0, 1000, exact=True).variance
    approx = theory_first_integral_stats(FIG, 3.0, 1000, exact=False).variance
    assert abs(exact - approx) / approx < 1e-4


def test_theory_second_integral_examples():
    st_ = theory_second_integral_stats(FIG, 3.0, 1.5, 1000)
    assert st_.mean == pytest.approx(3001.5)
    assert st_.std == pytest.approx(2.94e4, rel=2e-3)
    assert st_.components["drift"] / st_.variance > 0.9
    assert theory_second_integral_stats(FIG, 0.0, 0.0, 0).mean == 0.0


def _brute_force_integral_variances(spec, s):
    """Variance of first and second rectangular sums from the explicit weights of each draw."""
    dt = spec.dt
    k = np.arange(1, s + 1)
    # e_i = B0 N0 + du * sum_{j<=i} U_j + nv * V_i, first sum F_s = dt sum_i e_i
    w_off_f = dt * s
    w_u_f = dt * (s - k + 1)  # U_j appears in e_i for i >= j
    w_v_f = dt * np.ones(s)
    var_f = (spec.B0 * w_off_f) ** 2 + (spec.drift_scale**2) * np.sum(w_u_f**2) + spec.noise_scale**2 * np.sum(w_v_f**2)
    # G_s = dt sum_{m<=s} F_m; e_i enters F_m for m >= i with weight dt
    w_e_g = dt * dt * (s - k + 1)  # weight of e_i in G_s
    w_off_g = np.sum(w_e_g)
    w_u_g = np.array([np.sum(w_e_g[j - 1 :]) for j in k])
    var_g = (spec.B0 * w_off_g) ** 2 + spec.drift_scale**2 * np.sum(w_u_g**2) + spec.noise_scale**2 * np.sum(w_e_g**2)
    return var_f, var_g


@pytest.mark.parametrize("s", [1, 2, 7, 50, 400])
def test_exact_integral_forms_match_brute_force(s):
    spec = SingleAxisSpec(0.3, 0.2, 0.05, 0.1)
    var_f, var_g = _brute_force_integral_variances(spec, s)
    t = s * spec.dt
    assert theory_first_integral_stats(spec, 0, t).variance == pytest.approx(var_f, rel=1e-12)
    assert theory_second_integral_stats(spec, 0, 0, t).variance == pytest.approx(var_g, rel=1e-12)


def test_theory_rejects_negative_time():
    with pytest.raises(ValueError):
        theory_error_stats(FIG, -1)


def test_monte_carlo_first_integral_small():
    spec = SingleAxisSpec(0.05, 0.1, 0.02, 0.1)
    n_runs, s = 2000, 50
    finals = []
    for r in range(n_runs):
        e = simulate_errors(spec, GaussianStream(10_000 + r), s)
        finals.append(spec.dt * e.sum())
    th = theory_first_integral_stats(spec, 0, s * spec.dt)
    assert np.var(finals, ddof=1) == pytest.approx(th.variance, rel=0.1)


@pytest.mark.parametrize(
    "x, t, expected",
    [(5.10 / 3600, 100, 1.42e-4), (0.07e-3 * 9.80665, 100, 6.86e-5), (0.0, 100, 0.0)],
)
def test_sigma_u_from_stability(x, t, expected):
    assert float(f"{sigma_u_from_stability(x, t):.3g}") == expected


def test_sigma_u_rejects_bad_period():
    with pytest.raises(ValueError):
        sigma_u_from_stability(1.0, 0)


@pytest.mark.parametrize(
    "value, kind, dt, expected",
    [
        (0.26, "per_sqrt_hour", None, 4.33e-3),
        (0.029, "per_sqrt_hour", None, 4.83e-4),
        (0.0, "per_sqrt_hour", None, 0.0),
        (2.5e-3, "root_psd", None, 2.5e-3),
        (4e-6, "psd", None, 2e-3),
        (3.0, "random_walk_psd", 0.04, 0.6),
    ],
)
def test_sigma_v_conversions(value, kind, dt, expected):
    assert sigma_v_from_random_walk_spec(value, kind, dt) == pytest.approx(expected, rel=5e-3)


@pytest.mark.parametrize("kind, dt", [("psd_typo", None), ("random_walk_psd", None)])
def test_sigma_v_conversion_errors(kind, dt):
    with pytest.raises(ValueError):
        sigma_v_from_random_walk_spec(1.0, kind, dt)
