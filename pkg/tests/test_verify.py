import dataclasses
import math

import numpy as np
import pytest

from dynpressure import WaveParameters, solve
from dynpressure import fields as fl
from dynpressure import verify as vf
from dynpressure.errors import DegenerateField, NotDegenerate
from dynpressure.model import Region
from dynpressure.solver import shift_current

L = 10.0


def test_extrema_at_crest_and_trough(any_wave):
    g = fl.sample_grid(any_wave, 129, 65)
    ext = vf.locate_extrema(g)
    assert ext.crest_is_max and ext.trough_is_min
    assert ext.margin > 0
    assert ext.max_location[0] == 0.0
    assert ext.max_location[1] == pytest.approx(fl.surface_at(any_wave, 0.0), abs=1e-14)


def test_extrema_detects_moved_maximum(finite_wave):
    g = fl.sample_grid(finite_wave, 33, 17)
    p = g.p_dyn.copy()
    p[10, 5] = p.max() + 1.0
    ext = vf.locate_extrema(dataclasses.replace(g, p_dyn=p))
    assert not ext.crest_is_max and ext.trough_is_min and ext.margin_max < 0


def test_extrema_flat_field_is_degenerate(flat_degenerate):
    with pytest.raises(DegenerateField):
        vf.locate_extrema(fl.sample_grid(flat_degenerate, 33, 17))


def test_sign_invariants(any_wave):
    g = fl.sample_grid(any_wave, 65, 33, y_min=-L if any_wave.params.is_deep else None)
    rep = vf.check_sign_invariants(any_wave, g)
    assert all(c.status == vf.PASS for c in rep.checks), [c for c in rep.checks if c.status != vf.PASS]
    names = {c.name for c in rep.checks}
    assert ("deep_P_x_negative" in names) == any_wave.params.is_deep


def test_sign_of_v_follows_current_case(finite_wave, fast_current_wave):
    g = fl.sample_grid(finite_wave, 33, 17)
    assert vf.check_sign_invariants(finite_wave, g)["v_sign_open_half_period"].detail["expected_sign"] == 1
    g = fl.sample_grid(fast_current_wave, 33, 17)
    rep = vf.check_sign_invariants(fast_current_wave, g)
    assert rep["v_sign_open_half_period"].detail["expected_sign"] == -1
    assert rep["u_minus_c_sign"].detail["expected_sign"] == 1


def test_corrupted_v_flags_sign_violation(finite_wave):
    g = fl.sample_grid(finite_wave, 33, 17)
    bad = dataclasses.replace(g, v=-g.v)
    rep = vf.check_sign_invariants(finite_wave, bad)
    assert rep["v_sign_open_half_period"].status == vf.FAIL
    assert not rep.satisfied


def test_corrupted_v_breaks_antisymmetry(finite_wave):
    """Second harmonic of v given the wrong parity: v gains an even part."""
    g = fl.sample_grid(finite_wave, 33, 17, Region.FULL_PERIOD)
    assert vf.check_symmetry(finite_wave, g).satisfied
    k = 2 * math.pi / L
    even_part = 0.01 * np.cos(2 * k * g.x) * np.exp(2 * k * g.y)
    rep = vf.check_symmetry(finite_wave, dataclasses.replace(g, v=g.v + even_part))
    assert rep["v_odd"].status == vf.FAIL
    assert rep["u_even"].status == vf.PASS


def test_symmetry_needs_full_grid(finite_wave):
    with pytest.raises(ValueError):
        vf.check_symmetry(finite_wave, fl.sample_grid(finite_wave, 9, 9))


def test_monotonicity_paths(any_wave):
    rep = vf.check_monotonicity(any_wave)
    assert rep.satisfied and not rep.degenerate
    names = [p.name for p in rep.paths]
    if any_wave.params.is_deep:
        assert "bed_crest_to_trough" not in names
        assert rep.tail["max_abs_p"] < rep.tail["bound"]
    else:
        assert "bed_crest_to_trough" in names
    assert all(p.status == vf.PASS for p in rep.paths)


def test_elliptic_residual_is_second_order(any_wave):
    coarse, fine, ratio = vf.elliptic_convergence(any_wave)
    assert fine.residual_max < coarse.residual_max
    assert 3.0 <= ratio <= 5.0


def test_elliptic_rejects_bad_spacing(finite_wave):
    with pytest.raises(ValueError):
        vf.check_elliptic_identity(finite_wave, h=0.3)


def test_degenerate_current_pathway(flat_degenerate):
    rep = vf.check_degenerate_current(flat_degenerate)
    assert all(c.status == vf.PASS for c in rep.checks)


def test_not_degenerate_rejected(finite_wave):
    with pytest.raises(NotDegenerate):
        vf.check_degenerate_current(finite_wave)
    flat_moving = solve(WaveParameters(wavelength=L, depth=3.0, current=1.0))
    with pytest.raises(NotDegenerate):
        vf.check_degenerate_current(flat_moving)


def test_interior_exclusion(deep_wave):
    g = fl.sample_grid(deep_wave, 65, 33, y_min=-L)
    c = vf.check_interior_exclusion(deep_wave, g)["interior_exclusion"]
    assert c.status == vf.PASS and c.worst_margin > vf.MARGIN
    assert c.detail["min_minus_P_x_scaled"] > 0


def test_interior_exclusion_flat_deep():
    flat = solve(WaveParameters(wavelength=L, depth=math.inf))
    g = fl.sample_grid(flat, 9, 9, y_min=-L)
    assert vf.check_interior_exclusion(flat, g)["interior_exclusion"].status == vf.DEGENERATE


def test_verify_state_passes(any_wave):
    rep = vf.verify_state(any_wave, 65, 33)
    assert rep.passed, rep.failures()
    assert list(rep.entries)[:3] == ["residuals", "degenerate_current", "extrema"]


def test_verify_state_degenerate(flat_degenerate):
    rep = vf.verify_state(flat_degenerate, 65, 33)
    assert rep.passed
    assert rep.entries["degenerate_current"]["status"] == vf.PASS
    assert rep.entries["extrema"]["status"] == vf.DEGENERATE


def test_verify_state_flags_corrupted_state(finite_wave):
    bad = dataclasses.replace(finite_wave, stream_coeffs=finite_wave.stream_coeffs * 1.01)
    rep = vf.verify_state(bad, 33, 17)
    assert not rep.passed and "residuals" in rep.failures()


def test_verdicts_are_galilean_invariant(finite_wave):
    a = vf.verify_state(finite_wave, 65, 33)
    b = vf.verify_state(shift_current(finite_wave, 0.4 * finite_wave.wave_speed), 65, 33)
    assert a.verdicts_json() == b.verdicts_json()


def test_verdicts_stable_under_refinement(current_wave):
    a = vf.verify_state(current_wave, 65, 33)
    b = vf.verify_state(current_wave, 129, 65)
    assert a.verdicts_json() == b.verdicts_json()
