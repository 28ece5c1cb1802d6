"""Point and grid evaluation of psi, velocity and pressure from a FlowState.

Velocities are still-frame values: ``u = c + psi_y`` and ``v = -psi_x``.
The dynamic pressure is the total pressure minus the hydrostatic part
``P_atm - rho g y``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import AboveTrough, DeepWaterUnsupported, OutOfDomain
from .model import FieldGrid, FlowState, Region

DOMAIN_TOL = 1e-12  # in units of the wavelength
DEEP_BOTTOM = 3.0  # wavelengths below the mean level
SIGMA_STRETCH = 4.0
GAUSS_NODES = 32


class _Local(NamedTuple):
    """Scaled derivatives of psi at a set of points."""

    psi: np.ndarray
    psi_x: np.ndarray
    psi_y: np.ndarray
    psi_xx: np.ndarray
    psi_xy: np.ndarray
    u: np.ndarray  # scaled still-frame horizontal velocity
    y: np.ndarray  # scaled ordinate


def _eta_nd(state: FlowState, xs: np.ndarray) -> np.ndarray:
    a = state.nondim.a
    j = np.arange(1, a.shape[0] + 1)
    return np.cos(np.multiply.outer(xs, j)) @ a


def surface_at(state: FlowState, x):
    """Free-surface elevation eta(x) in metres."""
    ell = state.scaled.length_scale
    xs = np.asarray(x, dtype=float)
    out = _eta_nd(state, np.ravel(xs) / ell).reshape(xs.shape) * ell
    return float(out) if out.ndim == 0 else out


def _reduce(state, x):
    return np.mod(x, state.params.wavelength)


def _check_domain(state: FlowState, x, y):
    p = state.params
    tol = DOMAIN_TOL * p.wavelength
    eta = surface_at(state, x)
    bad = y > eta + tol
    if not p.is_deep:
        bad |= y < -p.depth - tol
    if np.any(bad):
        k = int(np.argmax(bad))
        raise OutOfDomain(
            f"point (x={np.ravel(x)[k]:.6g}, y={np.ravel(y)[k]:.6g}) lies outside the fluid"
        )


def _local(state: FlowState, x, y, check=True) -> _Local:
    x = np.ravel(np.asarray(x, dtype=float))
    y = np.ravel(np.asarray(y, dtype=float))
    if check:
        _check_domain(state, x, y)
    ell = state.scaled.length_scale
    nd = state.nondim
    xs = _reduce(state, x) / ell
    ys = y / ell
    f, fx, fy, fxx, fxy = kernels.series(nd.b, xs, ys, nd.depth)
    if nd.is_deep:
        psi = nd.offset - nd.c * ys + f
        psi_y = -nd.c + fy
        u = fy
    else:
        slope = nd.current - nd.c
        psi = nd.offset + slope * (ys + nd.depth) + f
        psi_y = slope + fy
        u = nd.current + fy
    return _Local(psi, fx, psi_y, fxx, fxy, u, ys)


def _shape(template, arr):
    shape = np.shape(template)
    if shape == ():
        return float(arr[0])
    return arr.reshape(shape)


def _broadcast(x, y):
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    return x, y


def stream_at(state: FlowState, x, y):
    """psi(x, y) in m^2/s; zero on the surface, m on the bed."""
    x, y = _broadcast(x, y)
    loc = _local(state, x, y)
    sp = state.scaled
    return _shape(x, loc.psi * (sp.velocity_scale * sp.length_scale))


def velocity_at(state: FlowState, x, y):
    """Still-frame velocity ``(u, v)`` in m/s."""
    x, y = _broadcast(x, y)
    loc = _local(state, x, y)
    vel = state.scaled.velocity_scale
    return _shape(x, loc.u * vel), _shape(x, -loc.psi_x * vel)


def _pressures(state: FlowState, loc: _Local):
    """Scaled total-minus-atmospheric and dynamic pressure."""
    nd = state.nondim
    ke = 0.5 * (loc.psi_x**2 + loc.psi_y**2)
    if nd.is_deep:
        dyn = nd.head - ke
    else:
        dyn = (nd.head - nd.depth) - ke
    return dyn - loc.y, dyn


def pressure_at(state: FlowState, x, y):
    """Total pressure P in Pa."""
    x, y = _broadcast(x, y)
    loc = _local(state, x, y)
    gauge, _ = _pressures(state, loc)
    return _shape(x, state.params.p_atm + gauge * state.scaled.pressure_scale)


def dynamic_pressure_at(state: FlowState, x, y):
    """Dynamic pressure p = P - (P_atm - rho g y) in Pa."""
    x, y = _broadcast(x, y)
    loc = _local(state, x, y)
    _, dyn = _pressures(state, loc)
    return _shape(x, dyn * state.scaled.pressure_scale)


def head_at(state: FlowState, x, y):
    """Bernoulli quantity |grad psi|^2/2g + y (+ d) + (P - P_atm)/(rho g) in metres.

    Constant (= Q or E) throughout the fluid.
    """
    x, y = _broadcast(x, y)
    p = state.params
    u, v = velocity_at(state, x, y)
    P = pressure_at(state, x, y)
    rel = np.asarray(u) - state.wave_speed
    base = np.asarray(y) + (0.0 if p.is_deep else p.depth)
    out = (rel**2 + np.asarray(v) ** 2) / (2 * p.gravity) + base + (np.asarray(P) - p.p_atm) / (
        p.density * p.gravity
    )
    return float(out) if np.ndim(out) == 0 else out


def flux_profile(state: FlowState, xs=None) -> np.ndarray:
    """-int_{-d}^{eta(x)} (u - c) dy by Gauss-Legendre at each x."""
    p = state.params
    if p.is_deep:
        raise DeepWaterUnsupported("the relative mass flux is infinite in deep water")
    if xs is None:
        xs = np.linspace(0.0, 0.5 * p.wavelength, 9)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    t, w = np.polynomial.legendre.leggauss(GAUSS_NODES)
    eta = np.atleast_1d(surface_at(state, xs))
    half = 0.5 * (eta + p.depth)
    yy = -p.depth + np.multiply.outer(half, t + 1.0)
    xx = np.broadcast_to(xs[:, None], yy.shape)
    loc = _local(state, xx, yy, check=False)
    rel = loc.psi_y.reshape(yy.shape) * state.scaled.velocity_scale
    return -(rel @ w) * half


def flux(state: FlowState) -> float:
    """Relative mass flux m by vertical quadrature, averaged over columns."""
    return float(np.mean(flux_profile(state)))


def mean_current(state: FlowState, y0: float, n: int | None = None) -> float:
    """Period mean of u at depth ``y0`` (trapezoid rule on equispaced x)."""
    p = state.params
    tol = DOMAIN_TOL * p.wavelength
    trough = surface_at(state, 0.5 * p.wavelength)
    if y0 > trough + tol:
        raise AboveTrough(f"y0={y0!r} lies above the trough level {trough!r}")
    if not p.is_deep and y0 < -p.depth - tol:
        raise OutOfDomain(f"y0={y0!r} lies below the bed")
    n = n or max(64, 4 * p.modes + 4)
    xs = np.arange(n) * (p.wavelength / n)
    u, _ = velocity_at(state, xs, np.full(n, float(y0)))
    return float(np.mean(u))


def _columns(state: FlowState, nx: int, region: Region) -> np.ndarray:
    L = state.params.wavelength
    if region is Region.FULL_PERIOD:
        if nx < 3 or nx % 2 == 0:
            raise ValueError("full-period grids need an odd nx >= 3 to hit the trough column")
        xs = np.arange(nx) * (L / (nx - 1))
        xs[-1] = L
        xs[(nx - 1) // 2] = 0.5 * L
        return xs
    if region is Region.CREST_LINE:
        return np.zeros(1)
    if region is Region.TROUGH_LINE:
        return np.full(1, 0.5 * L)
    if nx < 3:
        raise ValueError("nx must be >= 3")
    xs = np.arange(nx) * (0.5 * L / (nx - 1))
    xs[-1] = 0.5 * L
    return xs


def deep_bottom(state: FlowState) -> float:
    return -DEEP_BOTTOM * state.params.wavelength


def _sigma_levels(state: FlowState, eta: np.ndarray, ny: int, y_min: float) -> np.ndarray:
    sigma = np.arange(ny) / (ny - 1)
    if state.params.is_deep:
        beta = SIGMA_STRETCH
        frac = np.expm1(beta * (1.0 - sigma)) / np.expm1(beta)
    else:
        frac = 1.0 - sigma
    y = eta[:, None] - np.multiply.outer(eta - y_min, frac)
    y[:, 0] = y_min
    y[:, -1] = eta
    return y


def sample_grid(
    state: FlowState,
    nx: int,
    ny: int,
    region: Region = Region.HALF_PERIOD,
    y_min: float | None = None,
) -> FieldGrid:
    """Boundary-fitted sample of every field.

    Deep-water grids reach ``y_min`` (default three wavelengths below the
    mean level) with levels clustered towards the surface.
    """
    region = Region(region)
    p = state.params
    if y_min is None:
        y_min = deep_bottom(state) if p.is_deep else -p.depth
    elif not p.is_deep and y_min < -p.depth:
        raise OutOfDomain("y_min lies below the bed")
    xs = _columns(state, nx, region)
    eta = np.atleast_1d(surface_at(state, xs))
    if region is Region.SURFACE:
        y = eta[:, None].copy()
    elif region is Region.BED:
        if p.is_deep:
            raise DeepWaterUnsupported("deep water has no bed")
        y = np.full((xs.shape[0], 1), -p.depth)
    else:
        if ny < 3:
            raise ValueError("ny must be >= 3")
        y = _sigma_levels(state, eta, ny, y_min)
    x = np.broadcast_to(xs[:, None], y.shape).copy()
    loc = _local(state, x, y, check=False)
    sp = state.scaled
    gauge, dyn = _pressures(state, loc)
    shape = y.shape
    return FieldGrid(
        region=region,
        x=x,
        y=y,
        psi=(loc.psi * sp.velocity_scale * sp.length_scale).reshape(shape),
        u=(loc.u * sp.velocity_scale).reshape(shape),
        v=(-loc.psi_x * sp.velocity_scale).reshape(shape),
        P=(p.p_atm + gauge * sp.pressure_scale).reshape(shape),
        p_dyn=(dyn * sp.pressure_scale).reshape(shape),
        u_rel=(loc.psi_y * sp.velocity_scale).reshape(shape),
        y_bottom=float(y_min),
        wavelength=p.wavelength,
        velocity_scale=sp.velocity_scale,
        pressure_scale=sp.pressure_scale,
    )


def field_gradients(state: FlowState, x, y):
    """Analytic scaled psi derivatives at points (used by the verifiers)."""
    return _local(state, x, y, check=False)


def relative_speed_sq(state: FlowState, x, y) -> np.ndarray:
    """|grad psi|^2 in (m/s)^2."""
    loc = _local(state, x, y, check=False)
    return (loc.psi_x**2 + loc.psi_y**2) * state.scaled.velocity_scale**2


__all__ = [
    "surface_at",
    "stream_at",
    "velocity_at",
    "pressure_at",
    "dynamic_pressure_at",
    "head_at",
    "flux",
    "flux_profile",
    "mean_current",
    "sample_grid",
    "deep_bottom",
]
