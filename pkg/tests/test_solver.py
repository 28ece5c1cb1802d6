import math

import numpy as np
import pytest

from dynpressure import WaveParameters, solve
from dynpressure import fields as fl
from dynpressure.errors import InvalidOption, NoConvergence, SteepnessLimit
from dynpressure.model import DEEP, scale
from dynpressure.solver import (
    SolverSettings,
    _linear_nondim,
    _pack,
    _System,
    collocation_nodes,
    continuation_sweep,
    iter_continuation,
    linear_wave,
    residual,
    shift_current,
    solve_deep,
    solve_steady,
)

L = 10.0
KAPPA = 2 * math.pi / L


def c_linear(depth, current=0.0):
    t = 1.0 if math.isinf(depth) else math.tanh(KAPPA * depth)
    return current + math.sqrt(9.81 / KAPPA * t)


def test_settings_validation():
    with pytest.raises(InvalidOption):
        SolverSettings(newton_tol=0)
    with pytest.raises(InvalidOption):
        SolverSettings(damping=1.5)
    with pytest.raises(InvalidOption):
        SolverSettings(continuation_steps=0)


def test_collocation_nodes_cover_crest_to_trough():
    x = collocation_nodes(9)
    assert x[0] == 0.0 and x[-1] == pytest.approx(math.pi) and np.all(np.diff(x) > 0)


@pytest.mark.parametrize("depth, current", [(3.0, 0.0), (3.0, -1.1), (DEEP, 0.0)])
def test_analytic_jacobian_matches_finite_differences(depth, current):
    p = WaveParameters(wavelength=L, depth=depth, current=current, height=0.6, modes=8)
    sp = scale(p)
    sys = _System(sp.modes, sp.surface_nodes, sp.depth, sp.current, sp.height)
    z = _pack(_linear_nondim(sp, 0.5 * sp.height))
    z[1:8] += 0.01 * np.arange(1, 8) ** -2.0
    z[9:16] -= 0.02 * np.arange(1, 8) ** -2.0
    _, J = sys.evaluate(z)
    np.testing.assert_allclose(J, sys.jacobian_fd(z), rtol=1e-6, atol=1e-7)


def test_fd_jacobian_path_converges_to_same_state():
    p = WaveParameters(wavelength=L, depth=3.0, height=0.3, modes=12)
    a = solve(p)
    b = solve(p, SolverSettings(fd_jacobian=True, newton_tol=1e-10))
    assert b.wave_speed == pytest.approx(a.wave_speed, rel=1e-9)


@pytest.mark.parametrize("depth, current", [(3.0, 0.0), (10.0, 1.5), (3.0, -2.0)])
def test_flat_state_is_exact(depth, current):
    st = linear_wave(WaveParameters(wavelength=L, depth=depth, current=current), 0.0)
    assert st.wave_speed == pytest.approx(c_linear(depth, current))
    assert not np.any(st.surface_coeffs) and not np.any(st.stream_coeffs)
    assert st.residual_norm < 1e-15
    assert st.head == pytest.approx(depth + st.c_bar**2 / (2 * 9.81))


@pytest.mark.parametrize("depth", [3.0, 10.0, DEEP])
def test_small_amplitude_speed_matches_linear_dispersion(depth):
    st = solve(WaveParameters(wavelength=L, depth=depth, height=0.01 * L))
    assert abs(st.wave_speed / c_linear(depth) - 1) < 1e-3


@pytest.mark.parametrize("depth", [3.0, 10.0, DEEP])
def test_speed_follows_second_order_stokes(depth):
    """c/c0 - 1 = eps^2 (2 + 7 S^2) / (4 (1 - S)^2), eps = kappa H / 2, S = sech 2 kappa d."""
    S = 0.0 if math.isinf(depth) else 1 / math.cosh(2 * KAPPA * depth)
    C2 = (2 + 7 * S * S) / (4 * (1 - S) ** 2)
    errs = []
    for H in (0.2, 0.1):
        st = solve(WaveParameters(wavelength=L, depth=depth, height=H))
        eps = KAPPA * H / 2
        ratio = (st.wave_speed / c_linear(depth) - 1) / (eps**2 * C2)
        errs.append(abs(ratio - 1))
    assert errs[0] < 3e-3
    # next correction is O(eps^2): halving H divides the error by about four
    assert 3.0 < errs[0] / errs[1] < 5.0


def test_current_only_shifts_speed():
    base = solve(WaveParameters(wavelength=L, depth=3.0, height=0.5))
    moved = solve(WaveParameters(wavelength=L, depth=3.0, height=0.5, current=0.7))
    assert moved.wave_speed - base.wave_speed == pytest.approx(0.7, abs=1e-10)
    np.testing.assert_allclose(moved.surface_coeffs, base.surface_coeffs, atol=1e-12)


def test_shift_current_matches_direct_solve():
    base = solve(WaveParameters(wavelength=L, depth=3.0, height=0.5))
    shifted = shift_current(base, 0.7)
    direct = solve(WaveParameters(wavelength=L, depth=3.0, height=0.5, current=0.7))
    assert shifted.params == direct.params
    assert shifted.wave_speed == pytest.approx(direct.wave_speed, abs=1e-10)
    x, y = np.array([0.3, 2.0, 4.0]), np.array([-0.5, -1.0, -2.9])
    np.testing.assert_allclose(
        fl.dynamic_pressure_at(shifted, x, y), fl.dynamic_pressure_at(direct, x, y), atol=1e-8
    )


def test_shift_current_rejects_deep(deep_wave):
    with pytest.raises(InvalidOption):
        shift_current(deep_wave, 0.1)


def test_kind_specific_entry_points():
    with pytest.raises(InvalidOption):
        solve_deep(WaveParameters(wavelength=L, depth=3.0))
    with pytest.raises(InvalidOption):
        solve_steady(WaveParameters(wavelength=L, depth=DEEP))


@pytest.mark.parametrize("depth", [3.0, DEEP])
def test_off_collocation_residuals_small(depth):
    st = solve(WaveParameters(wavelength=L, depth=depth, height=0.05 * L))
    r = residual(st, nondimensional=True)
    assert r.kinematic_max < 1e-12 and r.bernoulli_max < 1e-12
    assert (r.bed_max is None) == math.isinf(depth)
    if r.bed_max is not None:
        assert r.bed_max < 1e-13
    with pytest.raises(ValueError):
        residual(st, dense_factor=1)


def test_square_collocation_still_supported():
    p = WaveParameters(wavelength=L, depth=3.0, height=0.5, modes=16, surface_nodes=17)
    st = solve(p)
    assert st.residual_norm < 1e-12
    assert residual(st, nondimensional=True).bernoulli_max < 1e-10


def test_sweep_matches_direct_solves():
    p = WaveParameters(wavelength=L, depth=3.0)
    states = continuation_sweep(p, [0.0, 0.2, 0.5])
    assert [s.params.height for s in states] == [0.0, 0.2, 0.5]
    direct = solve(WaveParameters(wavelength=L, depth=3.0, height=0.5))
    assert states[-1].wave_speed == pytest.approx(direct.wave_speed, rel=1e-12)
    speeds = [s.wave_speed for s in states]
    assert speeds == sorted(speeds)


def test_sweep_rejects_unsorted_heights():
    with pytest.raises(ValueError):
        continuation_sweep(WaveParameters(wavelength=L, depth=3.0), [0.3, 0.2])


def test_steep_wave_failure_is_reported():
    p = WaveParameters(wavelength=L, depth=3.0, height=2.0, modes=16)
    with pytest.raises(NoConvergence) as info:
        solve(p, SolverSettings(continuation_steps=1, max_newton_iters=8))
    assert not info.value.residual <= 1e-12


def test_sweep_failure_keeps_earlier_states():
    gen = iter_continuation(WaveParameters(wavelength=L, depth=3.0, modes=16), [0.2, 2.5],
                            SolverSettings(max_newton_iters=6))
    first = next(gen)
    assert first.params.height == 0.2
    with pytest.raises(SteepnessLimit) as info:
        next(gen)
    assert info.value.step == 1
    assert 0.0 <= info.value.reached_height < 2.5


def test_linear_wave_rejects_negative_amplitude():
    with pytest.raises(ValueError):
        linear_wave(WaveParameters(wavelength=L, depth=3.0), -0.1)
