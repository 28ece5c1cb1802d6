"""Randomised properties (hypothesis)."""

import math

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from dynpressure import WaveParameters, solve
from dynpressure import fields as fl
from dynpressure.cli import parse_config
from dynpressure.errors import ParameterError
from dynpressure.model import validate
from dynpressure.verify import locate_extrema

finite = st.floats(allow_nan=False, allow_infinity=False)


@given(
    L=st.floats(0.5, 500),
    d_over_L=st.floats(0.05, 3.0),
    h_frac=st.floats(0.0, 0.5),
    rho=st.floats(500, 2000),
    g=st.floats(1.0, 30.0),
)
def test_valid_parameters_round_trip(L, d_over_L, h_frac, rho, g):
    p = WaveParameters(wavelength=L, depth=d_over_L * L, height=h_frac * d_over_L * L,
                       density=rho, gravity=g)
    assert validate(p.to_dict()) == p


@given(L=finite, depth=finite, height=finite)
def test_validate_never_accepts_nonsense(L, depth, height):
    try:
        p = validate({"wavelength": L, "depth": depth, "height": height})
    except ParameterError:
        return
    assert p.wavelength > 0 and p.depth > 0 and 0 <= p.height < p.depth


@given(
    L=st.floats(1, 100).map(lambda v: round(v, 6)),
    depth=st.one_of(st.just("deep"), st.floats(0.5, 50).map(lambda v: round(v, 6))),
    nx=st.integers(3, 300),
)
def test_config_text_round_trip(L, depth, nx):
    cfg = parse_config(f"L = {L!r}\ndepth = {depth}\nnx = {nx}\n")
    assert cfg.params.wavelength == L and cfg.nx == nx
    assert cfg.params.is_deep == (depth == "deep")


@settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(
    H_over_L=st.floats(0.005, 0.08),
    d_over_L=st.one_of(st.just(math.inf), st.floats(0.3, 1.0)),
    k_rel=st.floats(-0.3, 0.3),
)
def test_pressure_extrema_at_crest_and_trough(H_over_L, d_over_L, k_rel):
    L = 10.0
    depth = d_over_L * L
    kap = 2 * math.pi / L
    c0 = math.sqrt(9.81 / kap * (1 if math.isinf(depth) else math.tanh(kap * depth)))
    current = 0.0 if math.isinf(depth) else k_rel * c0
    state = solve(WaveParameters(wavelength=L, depth=depth, height=H_over_L * L,
                                 current=current, modes=24))
    g = fl.sample_grid(state, 33, 17)
    ext = locate_extrema(g)
    assert ext.crest_is_max and ext.trough_is_min and ext.margin > 0
    x = np.linspace(0.05, 4.95, 9)
    eta = fl.surface_at(state, x)
    assert np.all(np.diff(eta) < 0)
