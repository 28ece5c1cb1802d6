import math

import pytest

from dynpressure import WaveParameters, solve

L = 10.0


def make(depth, height, current=0.0, **kw):
    return solve(WaveParameters(wavelength=L, depth=depth, height=height, current=current, **kw))


@pytest.fixture(scope="session")
def finite_wave():
    """d/L = 0.3, H/L = 0.05, no current."""
    return make(3.0, 0.5)


@pytest.fixture(scope="session")
def current_wave():
    """d/L = 1, H/L = 0.05, following current k = 0.3 c_lin."""
    c_lin = math.sqrt(9.81 / (2 * math.pi / L) * math.tanh(2 * math.pi))
    return make(10.0, 0.5, 0.3 * c_lin)


@pytest.fixture(scope="session")
def deep_wave():
    """Deep water, H/L = 0.05."""
    return make(math.inf, 0.5)


@pytest.fixture(scope="session")
def fast_current_wave():
    """Current faster than the wave (k > c) on the second dispersion branch."""
    return make(3.0, 0.5, 8.0, branch=-1)


@pytest.fixture(scope="session")
def flat_degenerate():
    """Uniform stream moving with the frame: k = c, H = 0."""
    return solve(WaveParameters(wavelength=L, depth=3.0, current=1.0, wave_speed=1.0))


@pytest.fixture(params=["finite", "current", "deep", "fast"])
def any_wave(request, finite_wave, current_wave, deep_wave, fast_current_wave):
    return {"finite": finite_wave, "current": current_wave, "deep": deep_wave,
            "fast": fast_current_wave}[request.param]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
