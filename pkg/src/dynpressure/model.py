"""Domain types, parameter validation and nondimensional scaling.

All public quantities are SI (m, s, kg, Pa).  Internally every computation
runs in units where the wavenumber and gravity are one: lengths are measured
in ``1/kappa``, velocities in ``sqrt(g/kappa)`` and pressures in
``rho*g/kappa``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field, fields, replace
from functools import cached_property
from typing import Any, Mapping, NamedTuple

import numpy as np

from .errors import (
    DeepWithCurrent,
    HeightExceedsDepth,
    InvalidOption,
    NegativeHeight,
    NonPositive,
    ParameterError,
)

DEEP = math.inf

DEFAULT_DENSITY = 1000.0
DEFAULT_GRAVITY = 9.81
DEFAULT_P_ATM = 101325.0
DEFAULT_MODES = 32


@dataclass(frozen=True)
class WaveParameters:
    """Physical and numerical inputs of one wave computation.

    ``depth`` is the mean water depth, or ``DEEP`` (``math.inf``) for
    infinite depth.  ``branch`` selects the root of the dispersion relation:
    ``+1`` gives ``c = k + c0`` (current slower than the wave), ``-1`` gives
    ``c = k - c0`` and requires ``k > c0`` so that ``c`` stays positive.
    ``wave_speed`` may only be prescribed for flat states, where the
    equations leave ``c`` free.  ``surface_nodes`` defaults to ``2N + 1``.
    """

    wavelength: float
    depth: float
    current: float = 0.0
    density: float = DEFAULT_DENSITY
    gravity: float = DEFAULT_GRAVITY
    p_atm: float = DEFAULT_P_ATM
    height: float = 0.0
    modes: int = DEFAULT_MODES
    surface_nodes: int | None = None
    wave_speed: float | None = None
    branch: int = 1

    def __post_init__(self):
        if self.surface_nodes is None and isinstance(self.modes, (int, np.integer)):
            # oversampled least squares keeps off-node errors near round-off
            object.__setattr__(self, "surface_nodes", 2 * int(self.modes) + 1)
        _check(self)

    @property
    def is_deep(self) -> bool:
        return math.isinf(self.depth)

    @property
    def wavenumber(self) -> float:
        return 2.0 * math.pi / self.wavelength

    @property
    def linear_intrinsic_speed(self) -> float:
        """Wave speed relative to the current from linear theory."""
        kappa = self.wavenumber
        if self.is_deep:
            return math.sqrt(self.gravity / kappa)
        return math.sqrt(self.gravity / kappa * math.tanh(kappa * self.depth))

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        out["depth"] = "deep" if self.is_deep else self.depth
        return out

    @classmethod
    def from_dict(cls, raw: Mapping[str, Any]) -> "WaveParameters":
        return validate(raw)


def _check(p: WaveParameters) -> None:
    for name in ("wavelength", "density", "gravity"):
        value = getattr(p, name)
        if not (value > 0 and math.isfinite(value)):
            raise NonPositive(f"{name} must be positive, got {value!r}", name)
    if not isinstance(p.modes, (int, np.integer)) or p.modes < 1:
        raise NonPositive(f"modes must be a positive integer, got {p.modes!r}", "modes")
    if not isinstance(p.surface_nodes, (int, np.integer)) or p.surface_nodes < p.modes + 1:
        raise InvalidOption(
            f"surface_nodes must be an integer >= modes+1 = {p.modes + 1}", "surface_nodes"
        )
    if not math.isfinite(p.height) or p.height < 0:
        raise NegativeHeight(f"height must be non-negative, got {p.height!r}", "height")
    if not math.isfinite(p.current) or not math.isfinite(p.p_atm):
        raise InvalidOption("current and p_atm must be finite", "current")
    if p.branch not in (1, -1):
        raise InvalidOption(f"branch must be +1 or -1, got {p.branch!r}", "branch")
    if p.is_deep:
        if p.current != 0.0:
            raise DeepWithCurrent(
                f"infinite depth requires zero underlying current, got {p.current!r}", "current"
            )
        if p.branch != 1:
            raise InvalidOption("infinite depth has no counter-propagating branch", "branch")
    else:
        if not p.depth > 0:
            raise NonPositive(f"depth must be positive, got {p.depth!r}", "depth")
        if p.height >= p.depth:
            raise HeightExceedsDepth(
                f"height {p.height!r} must stay below depth {p.depth!r}", "height"
            )
    if p.wave_speed is not None:
        if p.height != 0.0:
            raise InvalidOption("wave_speed can only be prescribed when height = 0", "wave_speed")
        if not p.wave_speed > 0:
            raise NonPositive("wave_speed must be positive", "wave_speed")
    elif p.current + p.branch * p.linear_intrinsic_speed <= 0:
        raise NonPositive(
            "selected dispersion branch gives a non-positive wave speed", "branch"
        )


_FIELD_NAMES = {f.name for f in fields(WaveParameters)}


def validate(raw: Mapping[str, Any] | WaveParameters) -> WaveParameters:
    """Build validated parameters from a mapping (or re-check existing ones).

    ``depth`` accepts a number or the string ``"deep"``.
    """
    if isinstance(raw, WaveParameters):
        return replace(raw)
    unknown = set(raw) - _FIELD_NAMES
    if unknown:
        raise ParameterError(f"unknown parameter(s): {sorted(unknown)}")
    kw = dict(raw)
    if "wavelength" not in kw or "depth" not in kw:
        raise ParameterError("wavelength and depth are required")
    depth = kw["depth"]
    if isinstance(depth, str):
        if depth.strip().lower() != "deep":
            raise ParameterError(f"depth must be a number or 'deep', got {depth!r}", "depth")
        kw["depth"] = DEEP
    for name in ("wavelength", "depth", "current", "density", "gravity", "p_atm", "height"):
        if name in kw:
            kw[name] = float(kw[name])
    if kw.get("wave_speed") is not None:
        kw["wave_speed"] = float(kw["wave_speed"])
    return WaveParameters(**kw)


@dataclass(frozen=True)
class ScaledParameters:
    """Nondimensional inputs (wavenumber = gravity = 1) plus the unit scales."""

    wavelength: float
    depth: float
    current: float
    height: float
    wave_speed: float | None
    length_scale: float
    time_scale: float
    velocity_scale: float
    pressure_scale: float
    density: float
    gravity: float
    p_atm: float
    modes: int
    surface_nodes: int
    branch: int

    @property
    def is_deep(self) -> bool:
        return math.isinf(self.depth)


def scale(params: WaveParameters) -> ScaledParameters:
    ell = params.wavelength / (2.0 * math.pi)
    vel = math.sqrt(params.gravity * ell)
    return ScaledParameters(
        wavelength=params.wavelength / ell,
        depth=params.depth / ell,
        current=params.current / vel,
        height=params.height / ell,
        wave_speed=None if params.wave_speed is None else params.wave_speed / vel,
        length_scale=ell,
        time_scale=ell / vel,
        velocity_scale=vel,
        pressure_scale=params.density * params.gravity * ell,
        density=params.density,
        gravity=params.gravity,
        p_atm=params.p_atm,
        modes=params.modes,
        surface_nodes=params.surface_nodes,
        branch=params.branch,
    )


def unscale(sp: ScaledParameters) -> WaveParameters:
    ell, vel = sp.length_scale, sp.velocity_scale
    return WaveParameters(
        wavelength=sp.wavelength * ell,
        depth=sp.depth * ell,
        current=sp.current * vel,
        density=sp.density,
        gravity=sp.gravity,
        p_atm=sp.p_atm,
        height=sp.height * ell,
        modes=sp.modes,
        surface_nodes=sp.surface_nodes,
        wave_speed=None if sp.wave_speed is None else sp.wave_speed * vel,
        branch=sp.branch,
    )


class NondimState(NamedTuple):
    """Solver view of a FlowState in scaled units."""

    depth: float
    current: float
    c: float
    a: np.ndarray  # a_1..a_N
    b: np.ndarray  # b_1..b_N
    head: float
    offset: float  # m (finite depth) or the constant term of psi (deep)

    @property
    def is_deep(self) -> bool:
        return math.isinf(self.depth)


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FlowState:
    """Converged spectral solution in SI units.

    ``surface_coeffs`` holds a_0..a_N of eta(x) = sum a_j cos(j kappa x)
    (a_0 = 0 by the mean-level constraint), ``stream_coeffs`` holds b_1..b_N.
    ``flux`` is the relative mass flux m (``None`` in deep water) and
    ``head`` is Q for finite depth or E for deep water.  ``psi_offset`` is
    the constant term of the deep-water stream function, which fixes the
    psi = 0 gauge on a surface with zero mean.
    """

    params: WaveParameters
    wave_speed: float
    surface_coeffs: np.ndarray
    stream_coeffs: np.ndarray
    flux: float | None
    head: float
    psi_offset: float = 0.0
    residual_norm: float = 0.0
    newton_iters: int = 0

    def __post_init__(self):
        object.__setattr__(self, "surface_coeffs", _frozen(self.surface_coeffs))
        object.__setattr__(self, "stream_coeffs", _frozen(self.stream_coeffs))
        n = self.params.modes
        if self.surface_coeffs.shape != (n + 1,) or self.stream_coeffs.shape != (n,):
            raise ValueError("coefficient arrays do not match the truncation order")

    @property
    def wavenumber(self) -> float:
        return self.params.wavenumber

    @property
    def c_bar(self) -> float:
        """k - c, the coefficient of the linear term of psi."""
        return self.params.current - self.wave_speed

    @cached_property
    def scaled(self) -> ScaledParameters:
        return scale(self.params)

    @cached_property
    def nondim(self) -> NondimState:
        sp = self.scaled
        ell, vel = sp.length_scale, sp.velocity_scale
        offset = self.psi_offset if self.params.is_deep else self.flux
        return NondimState(
            depth=sp.depth,
            current=sp.current,
            c=self.wave_speed / vel,
            a=np.asarray(self.surface_coeffs[1:]) / ell,
            b=np.asarray(self.stream_coeffs) / (vel * ell),
            head=self.head / ell,
            offset=offset / (vel * ell),
        )

    @classmethod
    def from_nondim(cls, params, nd: NondimState, residual_norm=0.0, newton_iters=0):
        sp = scale(params)
        ell, vel = sp.length_scale, sp.velocity_scale
        return cls(
            params=params,
            wave_speed=nd.c * vel,
            surface_coeffs=np.concatenate(([0.0], nd.a * ell)),
            stream_coeffs=nd.b * (vel * ell),
            flux=None if params.is_deep else nd.offset * vel * ell,
            head=nd.head * ell,
            psi_offset=nd.offset * vel * ell if params.is_deep else 0.0,
            residual_norm=float(residual_norm),
            newton_iters=int(newton_iters),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "params": self.params.to_dict(),
            "wavenumber": self.wavenumber,
            "wave_speed": self.wave_speed,
            "c_bar": self.c_bar,
            "surface_coeffs": [float(v) for v in self.surface_coeffs],
            "stream_coeffs": [float(v) for v in self.stream_coeffs],
            "flux": self.flux,
            "head": self.head,
            "head_kind": "E" if self.params.is_deep else "Q",
            "psi_offset": self.psi_offset,
            "residual_norm": self.residual_norm,
            "newton_iters": self.newton_iters,
        }

    @classmethod
    def from_dict(cls, raw: Mapping[str, Any]) -> "FlowState":
        return cls(
            params=validate(raw["params"]),
            wave_speed=float(raw["wave_speed"]),
            surface_coeffs=raw["surface_coeffs"],
            stream_coeffs=raw["stream_coeffs"],
            flux=None if raw.get("flux") is None else float(raw["flux"]),
            head=float(raw["head"]),
            psi_offset=float(raw.get("psi_offset", 0.0)),
            residual_norm=float(raw.get("residual_norm", 0.0)),
            newton_iters=int(raw.get("newton_iters", 0)),
        )


@dataclass(frozen=True)
class FieldSample:
    x: float
    y: float
    psi: float
    u: float
    v: float
    P: float
    p_dyn: float


class Region(enum.Enum):
    FULL_PERIOD = "full"
    HALF_PERIOD = "half"
    SURFACE = "surface"
    BED = "bed"
    CREST_LINE = "crest"
    TROUGH_LINE = "trough"


@dataclass(frozen=True, eq=False)
class FieldGrid:
    """Boundary-fitted samples, arrays of shape (nx, ny).

    Column ``i`` has constant ``x``; row ``ny - 1`` lies on the surface and
    row 0 on the bed (finite depth) or the truncation depth (deep water).
    ``u_rel`` is psi_y = u - c evaluated directly from the series.
    """

    region: Region
    x: np.ndarray
    y: np.ndarray
    psi: np.ndarray
    u: np.ndarray
    v: np.ndarray
    P: np.ndarray
    p_dyn: np.ndarray
    u_rel: np.ndarray
    y_bottom: float
    wavelength: float = 1.0
    velocity_scale: float = 1.0
    pressure_scale: float = 1.0
    extra: dict = field(default_factory=dict)

    @property
    def shape(self) -> tuple[int, int]:
        return self.x.shape

    @property
    def nx(self) -> int:
        return self.x.shape[0]

    @property
    def ny(self) -> int:
        return self.x.shape[1]

    def sample(self, i: int, j: int) -> FieldSample:
        return FieldSample(
            float(self.x[i, j]),
            float(self.y[i, j]),
            float(self.psi[i, j]),
            float(self.u[i, j]),
            float(self.v[i, j]),
            float(self.P[i, j]),
            float(self.p_dyn[i, j]),
        )
