"""Steady periodic water waves with the dynamic pressure field and checks on its extrema."""

from .errors import (
    ConfigError,
    DynPressureError,
    NoConvergence,
    ParameterError,
    SteepnessLimit,
)
from .fields import (
    dynamic_pressure_at,
    flux,
    mean_current,
    pressure_at,
    sample_grid,
    stream_at,
    surface_at,
    velocity_at,
)
from .kernels import BACKEND
from .model import DEEP, FieldGrid, FlowState, Region, WaveParameters, validate
from .solver import (
    SolverSettings,
    continuation_sweep,
    iter_continuation,
    linear_wave,
    residual,
    shift_current,
    solve,
    solve_deep,
    solve_steady,
)
from .verify import VerificationReport, verify_state

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DEEP",
    "ConfigError",
    "DynPressureError",
    "FieldGrid",
    "FlowState",
    "NoConvergence",
    "ParameterError",
    "Region",
    "SolverSettings",
    "SteepnessLimit",
    "VerificationReport",
    "WaveParameters",
    "continuation_sweep",
    "dynamic_pressure_at",
    "flux",
    "iter_continuation",
    "linear_wave",
    "mean_current",
    "pressure_at",
    "residual",
    "sample_grid",
    "shift_current",
    "solve",
    "solve_deep",
    "solve_steady",
    "stream_at",
    "surface_at",
    "validate",
    "velocity_at",
    "verify_state",
]
