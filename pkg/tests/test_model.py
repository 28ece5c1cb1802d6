import math

import numpy as np
import pytest

from dynpressure import model
from dynpressure.errors import (
    DeepWithCurrent,
    HeightExceedsDepth,
    InvalidOption,
    NegativeHeight,
    NonPositive,
    ParameterError,
)
from dynpressure.model import DEEP, FlowState, WaveParameters, scale, unscale, validate


def test_defaults():
    p = WaveParameters(wavelength=10.0, depth=5.0, height=0.5)
    assert (p.density, p.gravity, p.modes) == (1000.0, 9.81, 32)
    assert p.surface_nodes == 2 * p.modes + 1
    assert p.current == 0.0 and not p.is_deep


@pytest.mark.parametrize(
    "kw, exc",
    [
        ({"wavelength": -1.0}, NonPositive),
        ({"density": 0.0}, NonPositive),
        ({"gravity": math.nan}, NonPositive),
        ({"modes": 0}, NonPositive),
        ({"height": -0.1}, NegativeHeight),
        ({"depth": DEEP, "current": 0.5}, DeepWithCurrent),
        ({"height": 6.0}, HeightExceedsDepth),
        ({"surface_nodes": 10}, InvalidOption),
        ({"wave_speed": 2.0}, InvalidOption),  # only for flat states
    ],
)
def test_rejections(kw, exc):
    base = {"wavelength": 10.0, "depth": 5.0, "height": 0.5}
    base.update(kw)
    with pytest.raises(exc):
        WaveParameters(**base)


def test_second_branch_needs_a_fast_current():
    with pytest.raises(ParameterError):
        WaveParameters(wavelength=10.0, depth=3.0, height=0.5, branch=-1)
    WaveParameters(wavelength=10.0, depth=3.0, height=0.5, current=8.0, branch=-1)


def test_validate_accepts_deep_string_and_is_idempotent():
    p = validate({"wavelength": 10, "depth": "deep", "height": 0.5})
    assert p.is_deep and p.depth == DEEP
    assert validate(p) == p
    assert validate(p.to_dict()) == p


def test_validate_rejects_unknown_and_missing():
    with pytest.raises(ParameterError):
        validate({"wavelength": 10, "depth": 3, "colour": "blue"})
    with pytest.raises(ParameterError):
        validate({"wavelength": 10})
    with pytest.raises(ParameterError):
        validate({"wavelength": 10, "depth": "shallow"})


def test_linear_speed_matches_dispersion():
    p = WaveParameters(wavelength=10.0, depth=3.0, current=0.4)
    kap = 2 * math.pi / 10
    assert p.wavenumber == pytest.approx(kap)
    assert p.linear_intrinsic_speed == pytest.approx(math.sqrt(9.81 / kap * math.tanh(3 * kap)))
    assert WaveParameters(wavelength=10.0, depth=DEEP).linear_intrinsic_speed == pytest.approx(
        math.sqrt(9.81 / kap)
    )


@pytest.mark.parametrize("depth", [3.0, DEEP])
def test_scale_round_trip(depth):
    p = WaveParameters(wavelength=7.0, depth=depth, height=0.3, density=1025.0, gravity=9.8)
    sp = scale(p)
    assert sp.length_scale == pytest.approx(7.0 / (2 * math.pi))
    assert sp.velocity_scale == pytest.approx(math.sqrt(9.8 * sp.length_scale))
    assert unscale(sp) == p


def test_flow_state_round_trip(finite_wave, deep_wave):
    for st in (finite_wave, deep_wave):
        back = FlowState.from_dict(st.to_dict())
        assert back.params == st.params
        assert back.wave_speed == st.wave_speed
        np.testing.assert_array_equal(back.surface_coeffs, st.surface_coeffs)
        np.testing.assert_array_equal(back.stream_coeffs, st.stream_coeffs)
        assert back.head == st.head and back.flux == st.flux


def test_flow_state_is_read_only(finite_wave):
    with pytest.raises(ValueError):
        finite_wave.surface_coeffs[1] = 0.0
    assert finite_wave.surface_coeffs[0] == 0.0
    assert finite_wave.c_bar == pytest.approx(finite_wave.params.current - finite_wave.wave_speed)


def test_region_values():
    assert model.Region("half") is model.Region.HALF_PERIOD
    assert model.Region("full") is model.Region.FULL_PERIOD
