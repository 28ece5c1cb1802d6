"""Newton collocation solver for steady periodic irrotational waves.

The stream function is expanded in harmonic modes that satisfy Laplace's
equation, periodicity and the bed (or decay) condition exactly:

* finite depth: ``psi = m + (k - c)(y + d) + sum b_j sinh(j(y+d))/cosh(jd) cos(jx)``
* deep water:   ``psi = C - c y + sum b_j exp(jy) cos(jx)``

with ``eta = sum_{j>=1} a_j cos(jx)`` (zero mean).  The unknowns
``a_1..a_N, b_1..b_N, c, Q|E, m|C`` are fixed by the kinematic and
Bernoulli conditions at ``M`` surface nodes on the half period plus the
crest-to-trough height.  Everything here runs in scaled units.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace

import numpy as np

from . import kernels
from .errors import InvalidOption, NoConvergence, SteepnessLimit
from .model import FlowState, NondimState, WaveParameters, scale

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolverSettings:
    newton_tol: float = 1e-12
    max_newton_iters: int = 40
    continuation_steps: int = 4
    damping: float = 1.0
    fd_jacobian: bool = False

    def __post_init__(self):
        if not self.newton_tol > 0:
            raise InvalidOption("newton_tol must be positive", "newton_tol")
        if self.max_newton_iters < 1:
            raise InvalidOption("max_newton_iters must be >= 1", "max_newton_iters")
        if self.continuation_steps < 1:
            raise InvalidOption("continuation_steps must be >= 1", "continuation_steps")
        if not 0 < self.damping <= 1:
            raise InvalidOption("damping must lie in (0, 1]", "damping")


@dataclass(frozen=True)
class ResidualReport:
    """Boundary-condition residual maxima over off-collocation surface points.

    Dimensional by default (m^2/s for psi, m for Bernoulli); ``bed_max`` is
    ``None`` in deep water.
    """

    kinematic_max: float
    bernoulli_max: float
    bed_max: float | None
    nondimensional: bool = False

    def to_dict(self):
        return {
            "kinematic_max": self.kinematic_max,
            "bernoulli_max": self.bernoulli_max,
            "bed_max": self.bed_max,
            "nondimensional": self.nondimensional,
        }


def collocation_nodes(m: int) -> np.ndarray:
    """Crest-to-trough nodes on [0, pi], endpoints included."""
    return np.arange(m) * (math.pi / (m - 1))


class _System:
    """Residual and Jacobian of the collocation equations at fixed height."""

    def __init__(self, n, m, depth, current, height):
        self.n = n
        self.depth = depth
        self.deep = math.isinf(depth)
        self.current = current
        self.height = height
        self.x = collocation_nodes(m)
        j = np.arange(1, n + 1)
        self.cosjx = np.cos(np.multiply.outer(self.x, j))
        self.hgt_row = 1.0 - (-1.0) ** j

    def split(self, z):
        n = self.n
        return z[:n], z[n : 2 * n], z[2 * n], z[2 * n + 1], z[2 * n + 2]

    def evaluate(self, z, jacobian=True):
        n = self.n
        a, b, c, head, off = self.split(z)
        eta = self.cosjx @ a
        phi, phx, phy, phxx, phxy = kernels.basis(self.x, eta, n, self.depth)
        f, fx, fy, fxx, fxy = phi @ b, phx @ b, phy @ b, phxx @ b, phxy @ b
        if self.deep:
            lift = eta
            slope = -c
        else:
            lift = eta + self.depth
            slope = self.current - c
        psi = off + slope * lift + f
        psi_x = fx
        psi_y = slope + fy
        kin = psi
        ber = 0.5 * (psi_x**2 + psi_y**2) + lift - head
        hgt = self.hgt_row @ a - self.height
        F = np.concatenate((kin, ber, [hgt]))
        if not jacobian:
            return F, None
        m = self.x.shape[0]
        J = np.zeros((2 * m + 1, 2 * n + 3))
        J[:m, :n] = psi_y[:, None] * self.cosjx
        J[:m, n : 2 * n] = phi
        J[:m, 2 * n] = -lift
        J[:m, 2 * n + 2] = 1.0
        # psi_yy = -psi_xx for harmonic psi
        dber_deta = psi_x * fxy - psi_y * fxx + 1.0
        J[m : 2 * m, :n] = dber_deta[:, None] * self.cosjx
        J[m : 2 * m, n : 2 * n] = psi_x[:, None] * phx + psi_y[:, None] * phy
        J[m : 2 * m, 2 * n] = -psi_y
        J[m : 2 * m, 2 * n + 1] = -1.0
        J[2 * m, :n] = self.hgt_row
        return F, J

    def jacobian_fd(self, z, step=1e-7):
        """Central-difference Jacobian (debugging aid)."""
        F0, _ = self.evaluate(z, jacobian=False)
        J = np.empty((F0.shape[0], z.shape[0]))
        for i in range(z.shape[0]):
            h = step * max(1.0, abs(z[i]))
            zp, zm = z.copy(), z.copy()
            zp[i] += h
            zm[i] -= h
            J[:, i] = (self.evaluate(zp, False)[0] - self.evaluate(zm, False)[0]) / (2 * h)
        return J


def _pack(nd: NondimState) -> np.ndarray:
    return np.concatenate((nd.a, nd.b, [nd.c, nd.head, nd.offset]))


def _unpack(z, sys: _System) -> NondimState:
    a, b, c, head, off = sys.split(z)
    return NondimState(sys.depth, sys.current, float(c), a.copy(), b.copy(), float(head), float(off))


def newton(sys: _System, z0: np.ndarray, settings: SolverSettings):
    """Run Newton from ``z0``; returns ``(z, residual_norm, iterations)``.

    Square systems stop when the max-norm residual drops below
    ``newton_tol``.  Overdetermined ones (more surface nodes than modes)
    keep a truncation-sized least-squares residual, so they also stop once
    the Gauss-Newton step is below ``newton_tol`` relative to ``z``.
    """
    z = np.array(z0, dtype=float)
    square = sys.x.shape[0] * 2 + 1 == z.shape[0]
    norm = math.inf
    step = math.inf
    for it in range(settings.max_newton_iters + 1):
        F, J = sys.evaluate(z, jacobian=not settings.fd_jacobian)
        norm = float(np.max(np.abs(F)))
        if not math.isfinite(norm):
            break
        if norm <= settings.newton_tol:
            return z, norm, it
        if not square and step <= settings.newton_tol * max(1.0, float(np.max(np.abs(z)))):
            return z, norm, it
        if it == settings.max_newton_iters:
            break
        if settings.fd_jacobian:
            J = sys.jacobian_fd(z)
        try:
            if square:
                dz = np.linalg.solve(J, -F)
            else:
                dz = np.linalg.lstsq(J, -F, rcond=None)[0]
        except np.linalg.LinAlgError:
            break
        z = z + settings.damping * dz
        step = float(np.max(np.abs(dz)))
    raise NoConvergence(f"Newton stalled with residual {norm:.3e}", residual=norm)


def _linear_nondim(sp, amplitude) -> NondimState:
    n = sp.modes
    a = np.zeros(n)
    b = np.zeros(n)
    a[0] = amplitude
    k = sp.current
    if sp.is_deep:
        c = sp.wave_speed if sp.wave_speed is not None else 1.0
        b[0] = c * amplitude
        return NondimState(sp.depth, 0.0, c, a, b, 0.5 * c * c, 0.0)
    d = sp.depth
    if sp.wave_speed is not None:
        c = sp.wave_speed
    else:
        c = k + sp.branch * math.sqrt(math.tanh(d))
    b[0] = (c - k) * amplitude / math.tanh(d)
    return NondimState(d, k, c, a, b, 0.5 * (k - c) ** 2 + d, (c - k) * d)


def linear_wave(params: WaveParameters, amplitude: float) -> FlowState:
    """First-order (Airy) state with eta = amplitude * cos(kappa x).

    Exact for ``amplitude = 0``, where it is the uniform stream with the
    linear dispersion speed (or the prescribed ``wave_speed``).
    """
    if amplitude < 0:
        raise ValueError("amplitude must be non-negative")
    if params.wave_speed is not None and amplitude != 0:
        raise InvalidOption("a prescribed wave_speed only applies to flat states", "wave_speed")
    sp = scale(params)
    nd = _linear_nondim(sp, amplitude / sp.length_scale)
    state = FlowState.from_nondim(params, nd)
    return replace(state, residual_norm=_nondim_collocation_norm(state))


def _nondim_collocation_norm(state: FlowState) -> float:
    sp = state.scaled
    sys = _System(sp.modes, sp.surface_nodes, sp.depth, sp.current, sp.height)
    z = _pack(state.nondim)
    # height row excluded: a linear seed may carry any amplitude
    F, _ = sys.evaluate(z, jacobian=False)
    return float(np.max(np.abs(F[:-1])))


def _solve_height(params, sp, height, seed_z, settings, prev=None):
    """Newton at one height, bisecting once from ``prev`` on failure."""
    sys = _System(sp.modes, sp.surface_nodes, sp.depth, sp.current, height)
    try:
        return (*newton(sys, seed_z, settings), sys)
    except NoConvergence as first:
        if prev is None:
            prev_h, prev_z = 0.0, _pack(_linear_nondim(sp, 0.25 * height))
        else:
            prev_h, prev_z = prev
        mid = 0.5 * (prev_h + height)
        log.debug("bisecting continuation step %.6g -> %.6g", prev_h, mid)
        sys_mid = _System(sp.modes, sp.surface_nodes, sp.depth, sp.current, mid)
        try:
            z_mid, _, it_mid = newton(sys_mid, prev_z, settings)
            z, norm, it = newton(sys, z_mid, settings)
        except NoConvergence as second:
            raise SteepnessLimit(
                f"continuation failed at height {height:.6g} (scaled)",
                residual=min(first.residual, second.residual),
                reached_height=prev_h,
            ) from second
        return z, norm, it + it_mid, sys


def _check_finite(params, want_deep):
    if params.is_deep != want_deep:
        kind = "deep-water" if want_deep else "finite-depth"
        raise InvalidOption(f"expected {kind} parameters", "depth")


def _continuation(params: WaveParameters, settings: SolverSettings) -> FlowState:
    sp = scale(params)
    if sp.height == 0.0:
        return linear_wave(params, 0.0)
    steps = settings.continuation_steps
    heights = [sp.height * (s + 1) / steps for s in range(steps)]
    history: list[tuple[float, np.ndarray]] = []
    total_iters = 0
    norm = math.nan
    for step, h in enumerate(heights):
        if len(history) >= 2:
            (h1, z1), (h2, z2) = history[-2], history[-1]
            seed = z2 + (z2 - z1) * (h - h2) / (h2 - h1)
        elif history:
            seed = history[-1][1]
        else:
            seed = _pack(_linear_nondim(sp, 0.5 * h))
        try:
            z, norm, it, sys = _solve_height(
                params, sp, h, seed, settings, history[-1] if history else None
            )
        except SteepnessLimit as exc:
            exc.step = step
            exc.reached_height = exc.reached_height * sp.length_scale
            raise
        total_iters += it
        history.append((h, z))
    nd = _unpack(history[-1][1], sys)
    return FlowState.from_nondim(params, nd, residual_norm=norm, newton_iters=total_iters)


def solve_steady(params: WaveParameters, settings: SolverSettings | None = None) -> FlowState:
    """Finite-depth wave with underlying current ``params.current``."""
    _check_finite(params, want_deep=False)
    return _continuation(params, settings or SolverSettings())


def solve_deep(params: WaveParameters, settings: SolverSettings | None = None) -> FlowState:
    """Infinite-depth wave without underlying current."""
    _check_finite(params, want_deep=True)
    return _continuation(params, settings or SolverSettings())


def solve(params: WaveParameters, settings: SolverSettings | None = None) -> FlowState:
    if params.is_deep:
        return solve_deep(params, settings)
    return solve_steady(params, settings)


def iter_continuation(params: WaveParameters, heights, settings: SolverSettings | None = None):
    """Yield one FlowState per height, each Newton run seeded by the last.

    A failing step raises NoConvergence (or SteepnessLimit) with ``step``
    set to its index; states already yielded stay valid.
    """
    settings = settings or SolverSettings()
    heights = [float(h) for h in heights]
    if any(h < 0 for h in heights) or any(b <= a for a, b in zip(heights, heights[1:])):
        raise ValueError("heights must be non-negative and strictly increasing")
    sp0 = scale(params)
    prev = None
    for step, h in enumerate(heights):
        p = replace(params, height=h)
        if h == 0.0:
            yield linear_wave(p, 0.0)
            continue
        sp = scale(p)
        seed = prev[1] if prev else _pack(_linear_nondim(sp, 0.5 * sp.height))
        try:
            z, norm, it, sys = _solve_height(p, sp, sp.height, seed, settings, prev)
        except NoConvergence as exc:
            exc.step = step
            if isinstance(exc, SteepnessLimit):
                exc.reached_height = exc.reached_height * sp0.length_scale
            raise
        prev = (sp.height, z)
        yield FlowState.from_nondim(p, _unpack(z, sys), residual_norm=norm, newton_iters=it)


def continuation_sweep(params: WaveParameters, heights, settings: SolverSettings | None = None):
    """List form of :func:`iter_continuation`."""
    return list(iter_continuation(params, heights, settings))


def shift_current(state: FlowState, dk: float) -> FlowState:
    """Galilean copy with current ``k + dk`` and wave speed ``c + dk``.

    The relative flow, eta and the pressure fields are unchanged.
    """
    if state.params.is_deep:
        raise InvalidOption("deep-water states carry no current", "current")
    params = replace(state.params, current=state.params.current + dk,
                     wave_speed=None if state.params.wave_speed is None
                     else state.params.wave_speed + dk)
    return replace(state, params=params, wave_speed=state.wave_speed + dk)


def residual(
    state: FlowState,
    dense_factor: int = 4,
    nondimensional: bool = False,
    points: int | None = None,
) -> ResidualReport:
    """Boundary-condition residuals at midpoints between a refined node set.

    The half period is cut into ``dense_factor * (M - 1)`` cells, or into
    ``points`` cells when given (to compare truncations on one point set).
    """
    if dense_factor < 2:
        raise ValueError("dense_factor must be >= 2")
    sp = state.scaled
    nd = state.nondim
    cells = points if points is not None else dense_factor * (sp.surface_nodes - 1)
    if cells < 1:
        raise ValueError("points must be positive")
    x = (np.arange(cells) + 0.5) * (math.pi / cells)
    j = np.arange(1, sp.modes + 1)
    eta = np.cos(np.multiply.outer(x, j)) @ nd.a
    f, fx, fy, _, _ = kernels.series(nd.b, x, eta, nd.depth)
    if nd.is_deep:
        psi = nd.offset - nd.c * eta + f
        psi_y = -nd.c + fy
        ber = 0.5 * (fx**2 + psi_y**2) + eta - nd.head
        bed = None
    else:
        slope = nd.current - nd.c
        psi = nd.offset + slope * (eta + nd.depth) + f
        psi_y = slope + fy
        ber = 0.5 * (fx**2 + psi_y**2) + eta + nd.depth - nd.head
        fb = kernels.series(nd.b, x, np.full_like(x, -nd.depth), nd.depth)[0]
        bed = float(np.max(np.abs(fb)))
    kin = float(np.max(np.abs(psi)))
    bmax = float(np.max(np.abs(ber)))
    if nondimensional:
        return ResidualReport(kin, bmax, bed, True)
    psi_scale = sp.velocity_scale * sp.length_scale
    return ResidualReport(
        kin * psi_scale,
        bmax * sp.length_scale,
        None if bed is None else bed * psi_scale,
    )
