import numpy as np
import pytest

from cavitymems.frontier import (FrontierCurve, best_concurrence_at_mixedness,
                                 coverage_threshold, mbvms_frontier,
                                 mems_frontier, mems_frontier_value, mems_state,
                                 trajectory_sweep, werner_curve, x_state)
from cavitymems.measures import bell_max, concurrence, linear_entropy, werner_reference
from cavitymems.qcore import check_density, ginibre_density


def mems_mixedness(c):
    # family algebra: M = (8/3) c (1-c) on the upper branch, 8/9 - 2c^2/3 below
    return 8.0 * c * (1.0 - c) / 3.0 if c >= 2.0 / 3.0 else 8.0 / 9.0 - 2.0 * c * c / 3.0


def bell_ceiling(m):
    # rank-2 mixtures of phase-locked maximal states up to M = 2/3, then the
    # isotropic-correlation family; both saturate the purity budget exactly
    return 2.0 * np.sqrt(2.0 - 1.5 * m) if m <= 2.0 / 3.0 else 2.0 * np.sqrt(3.0 - 3.0 * m)


def test_mems_state_properties():
    for c in np.linspace(0.02, 1.0, 30):
        rho = mems_state(float(c))
        check_density(rho)
        assert abs(concurrence(rho) - c) < 1e-12
        assert abs(linear_entropy(rho) - mems_mixedness(float(c))) < 1e-12
    with pytest.raises(ValueError):
        mems_state(0.0)
    with pytest.raises(ValueError):
        mems_state(1.1)


def test_mems_frontier_value_inverts_the_family():
    for c in np.linspace(0.01, 1.0, 60):
        m = mems_mixedness(float(c))
        assert abs(mems_frontier_value(m) - c) < 1e-9
    assert mems_frontier_value(0.0) == 1.0
    assert abs(mems_frontier_value(16.0 / 27.0) - 2.0 / 3.0) < 1e-12
    assert mems_frontier_value(8.0 / 9.0) < 1e-7
    assert mems_frontier_value(0.95) == 0.0
    with pytest.raises(ValueError):
        mems_frontier_value(-0.1)
    with pytest.raises(ValueError):
        mems_frontier_value(1.5)


def test_mems_frontier_curve():
    curve = mems_frontier(120)
    assert curve.kind == "mems"
    assert np.all(np.diff(curve.mixedness) > 0.0)
    assert curve.mixedness[0] == 0.0 and abs(curve.value[0] - 1.0) < 1e-12
    for m, v in zip(curve.mixedness, curve.value):
        assert abs(mems_frontier_value(float(m)) - v) < 1e-9


def test_random_states_never_beat_the_frontier():
    rng = np.random.default_rng(101)
    for _ in range(10000):
        rho = ginibre_density(4, rng)
        gap = mems_frontier_value(linear_entropy(rho)) - concurrence(rho)
        assert gap > -1e-9


def test_werner_curve_matches_reference():
    curve = werner_curve(80)
    assert curve.kind == "werner"
    assert np.all(np.diff(curve.mixedness) > 0.0)
    ps = np.sqrt(np.clip(1.0 - curve.mixedness, 0.0, None))
    for p, m, v in zip(ps, curve.mixedness, curve.value):
        c_ref, m_ref = werner_reference(float(p))
        assert abs(v - c_ref) < 1e-9
        assert abs(m - m_ref) < 1e-12


def test_trajectory_sweep_dominance_and_meta():
    curves = trajectory_sweep([0.8, np.pi / 2.0, 2.4], chi_linear=25, chi_log=25)
    assert len(curves) == 3
    for curve in curves:
        assert curve.kind == "trajectory"
        assert curve.meta["measure"] == "concurrence"
        assert curve.meta["chi"].size == curve.value.size
        for m, v in zip(curve.mixedness, curve.value):
            assert v <= mems_frontier_value(float(m)) + 1e-9
    with pytest.raises(ValueError):
        trajectory_sweep([1.0], measure="negativity")


def test_trajectory_bell_respects_ceiling():
    curves = trajectory_sweep([1.2, 2.8], measure="bell", chi_linear=20, chi_log=20)
    for curve in curves:
        assert curve.meta["measure"] == "bell"
        for m, v in zip(curve.mixedness, curve.value):
            assert v <= bell_ceiling(float(m)) + 1e-9


def test_best_concurrence_at_mixedness():
    assert best_concurrence_at_mixedness(0.7) is None  # rank-2 family caps at 2/3
    assert abs(best_concurrence_at_mixedness(0.0) - 1.0) < 1e-9
    for m in (0.1, 0.3, 0.5):
        got = best_concurrence_at_mixedness(m)
        assert abs(got - mems_frontier_value(m)) < 1e-7  # on the frontier here
    # the family peels off the frontier between 0.6 and the rank-2 cap
    gap64 = mems_frontier_value(0.64) - best_concurrence_at_mixedness(0.64)
    gap66 = mems_frontier_value(0.66) - best_concurrence_at_mixedness(0.66)
    assert 0.008 < gap64 < 0.014
    assert 0.03 < gap66 < 0.042
    with pytest.raises(ValueError):
        best_concurrence_at_mixedness(-0.2)


def test_coverage_threshold_frozen_value():
    thr = coverage_threshold(50)
    assert abs(thr - 0.85 * 37.0 / 49.0) < 1e-12  # last passing point of the grid
    with pytest.raises(ValueError):
        coverage_threshold(10)


def test_mbvms_curve_against_rank2_and_correlation_families():
    curve = mbvms_frontier(restarts=8, seed=1729)
    assert curve.kind == "mbvms"
    assert curve.meta["note"] == "numeric lower-bound stand-in"
    for m, v in zip(curve.mixedness, curve.value):
        ceiling = bell_ceiling(float(m))
        assert v <= ceiling + 1e-9  # genuine states cannot beat the bound
        assert v >= ceiling - 2e-4  # and the optimizer should reach it
    assert np.all(np.diff(curve.value) < 1e-9)  # non-increasing with mixedness
    assert abs(curve.value[0] - 2.0 * np.sqrt(2.0)) < 1e-9


def test_mbvms_pinned_points():
    lone = mbvms_frontier(np.array([8.0 / 9.0]), restarts=8, seed=1729)
    assert abs(lone.value[0] - 2.0 / np.sqrt(3.0)) < 1e-6
    at_two_thirds = mbvms_frontier(np.array([2.0 / 3.0]), restarts=8, seed=1729)
    assert abs(at_two_thirds.value[0] - 2.0) < 1e-6
    with pytest.raises(ValueError):
        mbvms_frontier(np.array([0.5, 1.0]))  # M = 1 has a single state, bell 0
    with pytest.raises(ValueError):
        mbvms_frontier(np.array([0.5, 0.4]))


def test_x_state_helper():
    rho = x_state(0.3, 0.25, 0.25, 0.2, 0.1, 0.2)
    check_density(rho)
    assert abs(rho[0, 3] - 0.1) < 1e-15
    assert abs(rho[1, 2] - 0.2) < 1e-15


def test_frontier_curve_validation():
    with pytest.raises(ValueError):
        FrontierCurve("mystery", np.array([0.0]), np.array([1.0]))
    with pytest.raises(ValueError):
        FrontierCurve("mems", np.array([0.2, 0.1]), np.array([0.5, 0.6]))
    with pytest.raises(ValueError):
        FrontierCurve("mems", np.array([0.1, 0.2]), np.array([0.5, 1.5]))
    # trajectories may retrace mixedness
    FrontierCurve("trajectory", np.array([0.2, 0.1]), np.array([0.5, 0.6]))
