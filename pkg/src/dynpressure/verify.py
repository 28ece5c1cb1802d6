"""Executable checks of the extremum, sign and degeneracy properties.

Every strict inequality is tested against ``MARGIN`` in scaled units:
values beyond the margin pass, values of the wrong sign beyond the margin
fail, anything in between is reported as inconclusive.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import fields as fl
from .errors import (
    DegenerateField,
    NotDegenerate,
    PathOutOfDomain,
    VanishingGradient,
)
from .model import FieldGrid, FlowState, Region
from .solver import residual

MARGIN = 1e-9
RESIDUAL_TOL = 1e-8
SYMMETRY_TOL = 1e-10
COLUMN_V_TOL = 1e-12
GRADIENT_FLOOR = 1e-14
DEGENERATE_GATE = 1e-9
DEGENERATE_TOL = 1e-10
TAIL_TOL = 1e-6  # times rho g H
ELLIPTIC_RATIO = (3.0, 5.0)
FD_STEP = 1e-4  # wavelengths, for gradients of p
FD_STEP_TOTAL = 1e-3  # wavelengths, for P_x of the total pressure

PASS, FAIL, INCONCLUSIVE, DEGENERATE, SKIPPED = (
    "pass",
    "fail",
    "inconclusive",
    "degenerate",
    "skipped",
)


def _status(worst_margin: float) -> str:
    if worst_margin > MARGIN:
        return PASS
    if worst_margin < -MARGIN:
        return FAIL
    return INCONCLUSIVE


def _loc(x, y):
    return (float(x), float(y))


@dataclass
class Check:
    """One named check; ``worst_margin`` > 0 means strict satisfaction."""

    name: str
    status: str
    worst_margin: float | None = None
    worst_location: tuple[float, float] | None = None
    detail: dict = field(default_factory=dict)

    @property
    def satisfied(self) -> bool:
        return self.status == PASS

    def to_dict(self):
        return asdict(self)


@dataclass
class InvariantReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def satisfied(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def __getitem__(self, name) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {"checks": [c.to_dict() for c in self.checks]}


@dataclass
class ExtremaReport:
    max_location: tuple[float, float]
    max_value: float
    min_location: tuple[float, float]
    min_value: float
    crest_is_max: bool
    trough_is_min: bool
    margin_max: float
    margin_min: float

    @property
    def margin(self) -> float:
        return min(self.margin_max, self.margin_min)

    def to_dict(self):
        out = asdict(self)
        out["margin"] = self.margin
        return out


@dataclass
class EllipticResidualReport:
    """Residual of p_xx + p_yy - alpha p_x - beta p_y on an equispaced sub-grid.

    ``residual_max`` is scaled (pressure / length^2 in scaled units).
    """

    h: float
    residual_max: float
    n_points: int
    min_speed_sq: float

    def to_dict(self):
        return asdict(self)


@dataclass
class PathResult:
    name: str
    direction: str
    strictly_monotone: bool
    status: str
    violation_location: tuple[float, float] | None
    inconclusive_steps: int
    worst_step: float

    def to_dict(self):
        return asdict(self)


@dataclass
class MonotonicityReport:
    paths: list[PathResult]
    degenerate: bool = False
    tail: dict | None = None

    @property
    def satisfied(self) -> bool:
        ok = all(p.status != FAIL for p in self.paths)
        if self.tail is not None:
            ok = ok and self.tail["status"] != FAIL
        return ok

    def to_dict(self):
        return {
            "degenerate": self.degenerate,
            "paths": [p.to_dict() for p in self.paths],
            "tail": self.tail,
        }


# ---------------------------------------------------------------- extrema


def _crest_trough_columns(grid: FieldGrid):
    if grid.region is Region.HALF_PERIOD:
        return [0], grid.nx - 1
    if grid.region is Region.FULL_PERIOD:
        return [0, grid.nx - 1], (grid.nx - 1) // 2
    raise ValueError("extrema location needs a half- or full-period grid")


def locate_extrema(grid: FieldGrid, atol: float | None = None) -> ExtremaReport:
    """Global argmax/argmin of p over the grid, compared with crest and trough.

    Raises DegenerateField when p is constant to within ``atol``
    (default ``MARGIN`` in scaled pressure).
    """
    crest_cols, trough_col = _crest_trough_columns(grid)
    p = grid.p_dyn
    if atol is None:
        atol = MARGIN * grid.pressure_scale
    pmax, pmin = float(p.max()), float(p.min())
    if pmax - pmin < atol:
        raise DegenerateField(f"dynamic pressure spread {pmax - pmin:.3e} Pa below {atol:.3e}")
    imax = np.unravel_index(int(np.argmax(p)), p.shape)
    imin = np.unravel_index(int(np.argmin(p)), p.shape)
    top = grid.ny - 1
    crest_nodes = {(c, top) for c in crest_cols}
    crest_is_max = tuple(int(i) for i in imax) in crest_nodes
    trough_is_min = (int(imin[0]), int(imin[1])) == (trough_col, top)
    mask_max = np.ones(p.shape, bool)
    for c in crest_cols:
        mask_max[c, top] = False
    mask_min = np.ones(p.shape, bool)
    mask_min[trough_col, top] = False
    crest_val = max(float(p[c, top]) for c in crest_cols)
    trough_val = float(p[trough_col, top])
    return ExtremaReport(
        max_location=_loc(grid.x[imax], grid.y[imax]),
        max_value=pmax,
        min_location=_loc(grid.x[imin], grid.y[imin]),
        min_value=pmin,
        crest_is_max=bool(crest_is_max),
        trough_is_min=bool(trough_is_min),
        margin_max=float(crest_val - p[mask_max].max()),
        margin_min=float(p[mask_min].min() - trough_val),
    )


# ---------------------------------------------------------------- signs


def _is_flat(state: FlowState) -> bool:
    return not np.any(state.nondim.a)


def _open_mask(grid: FieldGrid) -> np.ndarray:
    """Samples strictly inside 0 < x < L/2 and strictly below the surface."""
    L = grid.wavelength
    m = (grid.x > 0) & (grid.x < 0.5 * L)
    m[:, -1] = False
    m[:, 0] = False  # bed, or the artificial truncation depth
    return m


def _margin_check(name, values, grid, mask, detail=None) -> Check:
    vals = np.where(mask, values, np.inf)
    k = np.unravel_index(int(np.argmin(vals)), vals.shape)
    worst = float(vals[k])
    return Check(name, _status(worst), worst, _loc(grid.x[k], grid.y[k]), detail or {})


def pressure_x(state: FlowState, x, y, step: float | None = None) -> np.ndarray:
    """Central difference of the total pressure in x (Pa/m)."""
    h = (step or FD_STEP_TOTAL) * state.params.wavelength
    plus = _raw_pressure(state, np.asarray(x) + h, y)
    minus = _raw_pressure(state, np.asarray(x) - h, y)
    return (plus - minus) / (2 * h)


def _raw_pressure(state, x, y):
    loc = fl.field_gradients(state, x, y)
    gauge, _ = fl._pressures(state, loc)
    return (state.params.p_atm + gauge * state.scaled.pressure_scale).reshape(np.shape(x))


def _raw_dynamic(state, x, y):
    loc = fl.field_gradients(state, x, y)
    _, dyn = fl._pressures(state, loc)
    return (dyn * state.scaled.pressure_scale).reshape(np.shape(x))


def _current_case(state: FlowState) -> int:
    """+1 for k > c, -1 for k < c (and deep water), 0 for k = c."""
    if state.params.is_deep:
        return -1
    cb = state.c_bar
    gate = DEGENERATE_GATE * math.sqrt(state.params.gravity * state.params.wavelength)
    if abs(cb) < gate:
        return 0
    return 1 if cb > 0 else -1


def check_sign_invariants(state: FlowState, grid: FieldGrid) -> InvariantReport:
    """Signs of u - c, v and (deep water) P_x over the grid samples."""
    vel = state.scaled.velocity_scale
    case = _current_case(state)
    rep = InvariantReport()
    everywhere = np.ones(grid.shape, bool)
    if case == 0:
        rep.checks.append(Check("u_minus_c_sign", DEGENERATE, detail={"case": "k=c"}))
    else:
        rep.checks.append(
            _margin_check(
                "u_minus_c_sign",
                case * grid.u_rel / vel,
                grid,
                everywhere,
                {"expected_sign": case},
            )
        )
    open_mask = _open_mask(grid)
    v_sign = -1 if case == 1 else 1
    if case == 0 or _is_flat(state):
        rep.checks.append(Check("v_sign_open_half_period", DEGENERATE))
    else:
        detail = {"expected_sign": v_sign}
        if case == -1 and not state.params.is_deep:
            detail["inferred"] = "sign for k<c inferred from v=(u-c)eta_x"
        rep.checks.append(
            _margin_check("v_sign_open_half_period", v_sign * grid.v / vel, grid, open_mask, detail)
        )
    L = grid.wavelength
    cols = (grid.x == 0.0) | (grid.x == 0.5 * L) | (grid.x == L)
    vmax = float(np.max(np.abs(grid.v[cols]))) / vel if np.any(cols) else 0.0
    rep.checks.append(
        Check(
            "v_zero_on_crest_trough_lines",
            PASS if vmax <= COLUMN_V_TOL else FAIL,
            -vmax,
            detail={"max_abs_v_scaled": vmax},
        )
    )
    if state.params.is_deep:
        if _is_flat(state):
            rep.checks.append(Check("deep_P_x_negative", DEGENERATE))
        else:
            px = pressure_x(state, grid.x, grid.y)
            scaled = -px / (state.params.density * state.params.gravity)
            rep.checks.append(_margin_check("deep_P_x_negative", scaled, grid, open_mask))
    return rep


# ---------------------------------------------------------------- monotonicity


def _vertical_levels(state, top, bottom, n):
    s = np.linspace(0.0, 1.0, n)
    if state.params.is_deep:
        frac = np.expm1(fl.SIGMA_STRETCH * s) / np.expm1(fl.SIGMA_STRETCH)
    else:
        frac = s
    y = top - (top - bottom) * frac
    y[0], y[-1] = top, bottom
    return y


def _path(name, direction, xs, ys, p, scale_p) -> PathResult:
    steps = np.diff(p) / scale_p  # want strictly negative
    margins = -steps
    bad = margins < -MARGIN
    unsure = np.abs(margins) <= MARGIN
    worst = float(margins.min()) if margins.size else math.inf
    loc = None
    if np.any(bad):
        k = int(np.argmax(bad)) + 1
        loc = _loc(xs[k], ys[k])
    status = FAIL if np.any(bad) else (INCONCLUSIVE if np.any(unsure) else PASS)
    return PathResult(name, direction, status == PASS, status, loc, int(unsure.sum()), worst)


def check_monotonicity(state: FlowState, npath: int = 64, y_min: float | None = None) -> MonotonicityReport:
    """Strict decrease of p along the boundary paths of the half period.

    Traversal: crest line downward, bed from crest to trough, trough line
    upward, surface from crest to trough.  Deep water replaces the bed path
    with a bound on |p| at the truncation depth.
    """
    if npath < 16:
        raise ValueError("npath must be >= 16")
    p = state.params
    L = p.wavelength
    bottom = -p.depth if not p.is_deep else (y_min if y_min is not None else fl.deep_bottom(state))
    if not p.is_deep and bottom < -p.depth:
        raise PathOutOfDomain("path reaches below the bed")
    pscale = state.scaled.pressure_scale
    eta0 = fl.surface_at(state, 0.0)
    eta_t = fl.surface_at(state, 0.5 * L)
    if _current_case(state) == 0 or _is_flat(state):
        return MonotonicityReport([], degenerate=True)
    paths = []
    y = _vertical_levels(state, eta0, bottom, npath)
    x = np.zeros(npath)
    paths.append(_path("crest_line_down", "decreasing downward", x, y,
                       _raw_dynamic(state, x, y), pscale))
    xb = np.linspace(0.0, 0.5 * L, npath)
    tail = None
    if not p.is_deep:
        yb = np.full(npath, -p.depth)
        paths.append(_path("bed_crest_to_trough", "decreasing crest to trough", xb, yb,
                           _raw_dynamic(state, xb, yb), pscale))
    else:
        yb = np.full(npath, bottom)
        pt = np.abs(_raw_dynamic(state, xb, yb))
        bound = TAIL_TOL * p.density * p.gravity * p.height
        tail = {
            "y": float(bottom),
            "max_abs_p": float(pt.max()),
            "bound": bound,
            "status": PASS if pt.max() < bound else FAIL,
        }
    y = _vertical_levels(state, eta_t, bottom, npath)[::-1]
    x = np.full(npath, 0.5 * L)
    paths.append(_path("trough_line_up", "decreasing upward", x, y,
                       _raw_dynamic(state, x, y), pscale))
    ys = np.atleast_1d(fl.surface_at(state, xb))
    paths.append(_path("surface_crest_to_trough", "decreasing crest to trough", xb, ys,
                       _raw_dynamic(state, xb, ys), pscale))
    return MonotonicityReport(paths, tail=tail)


# ---------------------------------------------------------------- elliptic identity


def _elliptic_box(state: FlowState, depth_below_trough: float | None):
    p = state.params
    L = p.wavelength
    top = fl.surface_at(state, 0.5 * L)
    if p.is_deep:
        bottom = top - (depth_below_trough if depth_below_trough is not None else L)
    else:
        bottom = -p.depth
    return top, bottom


def check_elliptic_identity(
    state: FlowState,
    h: float | None = None,
    depth_below_trough: float | None = None,
    node_spacing: float | None = None,
) -> EllipticResidualReport:
    """Finite-difference residual of Delta p = alpha p_x + beta p_y.

    Stencil centres form an equispaced grid (spacing ``node_spacing``,
    default ``h``) covering 0 <= x <= L/2 and the band between the bed
    (deep: one wavelength down) and the trough level, minus its top and
    bottom rows so every 5-point stencil of half-width ``h`` stays inside.
    """
    p = state.params
    L = p.wavelength
    h = h if h is not None else L / 32
    H = node_spacing if node_spacing is not None else h
    if h > H * (1 + 1e-12):
        raise ValueError("stencil spacing must not exceed the node spacing")
    nxh = int(round(0.5 * L / H))
    if nxh < 1 or not math.isclose(nxh * H, 0.5 * L, rel_tol=1e-12):
        raise ValueError("node spacing must divide L/2")
    top, bottom = _elliptic_box(state, depth_below_trough)
    nyh = int(math.floor((top - bottom) / H * (1 + 1e-12)))
    if nyh < 2:
        raise ValueError("spacing too large for the fluid band")
    xs = np.arange(nxh + 1) * H
    ys = bottom + np.arange(1, nyh) * H
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    X, Y = X.ravel(), Y.ravel()
    pc = _raw_dynamic(state, X, Y)
    pe, pw = _raw_dynamic(state, X + h, Y), _raw_dynamic(state, X - h, Y)
    pn, ps = _raw_dynamic(state, X, Y + h), _raw_dynamic(state, X, Y - h)
    ell = state.scaled.length_scale
    pscale = state.scaled.pressure_scale
    hs = h / ell
    pe, pw, pn, ps, pc = (v / pscale for v in (pe, pw, pn, ps, pc))
    lap = (pe + pw + pn + ps - 4 * pc) / hs**2
    px = (pe - pw) / (2 * hs)
    py = (pn - ps) / (2 * hs)
    loc = fl.field_gradients(state, X, Y)
    speed_sq = loc.psi_x**2 + loc.psi_y**2
    smin = float(speed_sq.min())
    if smin < GRADIENT_FLOOR:
        raise VanishingGradient(f"|grad psi|^2 = {smin:.3e} at a stencil centre")
    alpha = -2 * px / speed_sq
    beta = -2 * py / speed_sq
    res = lap - alpha * px - beta * py
    return EllipticResidualReport(float(h), float(np.max(np.abs(res))), int(X.size), smin)


def elliptic_convergence(state: FlowState, h: float | None = None, depth_below_trough=None):
    """Residual maxima with stencil spacing h and h/2 on the same centres, and their ratio."""
    h = h if h is not None else state.params.wavelength / 32
    coarse = check_elliptic_identity(state, h, depth_below_trough)
    fine = check_elliptic_identity(state, 0.5 * h, depth_below_trough, node_spacing=h)
    ratio = coarse.residual_max / fine.residual_max if fine.residual_max > 0 else math.nan
    return coarse, fine, ratio


# ---------------------------------------------------------------- degenerate current


def check_degenerate_current(state: FlowState, nx: int = 65, ny: int = 33) -> InvariantReport:
    """k = c pathway: flat surface, psi = 0, m = 0, Q = d, p = 0, hydrostatic P."""
    p = state.params
    if p.is_deep or _current_case(state) != 0:
        raise NotDegenerate(f"|k - c| = {abs(state.c_bar):.3e} exceeds the degeneracy gate")
    L, d = p.wavelength, p.depth
    rgd = p.density * p.gravity * d
    grid = fl.sample_grid(state, nx, ny, Region.HALF_PERIOD)
    vel_flux = math.sqrt(p.gravity * L) * d
    eta_dev = float(np.max(np.abs(grid.y[:, -1])))
    p_dev = float(np.max(np.abs(grid.p_dyn)))
    hydro = float(np.max(np.abs(grid.P - (p.p_atm - p.density * p.gravity * grid.y))))
    psi_dev = float(np.max(np.abs(grid.psi)))
    entries = [
        ("eta_flat", eta_dev, 1e-12 * L),
        ("psi_zero", psi_dev, DEGENERATE_TOL * vel_flux),
        ("flux_zero", abs(state.flux), DEGENERATE_TOL * vel_flux),
        ("head_equals_depth", abs(state.head - d), DEGENERATE_TOL * d),
        ("dynamic_pressure_zero", p_dev, DEGENERATE_TOL * rgd),
        ("pressure_hydrostatic", hydro, DEGENERATE_TOL * rgd),
    ]
    rep = InvariantReport()
    for name, value, bound in entries:
        rep.checks.append(
            Check(name, PASS if value < bound else FAIL, float(bound - value),
                  detail={"value": float(value), "bound": float(bound)})
        )
    return rep


# ---------------------------------------------------------------- symmetry


def check_symmetry(state: FlowState, grid: FieldGrid) -> InvariantReport:
    """Crest-line symmetry of eta, u, P and antisymmetry of v on a full-period grid."""
    if grid.region is not Region.FULL_PERIOD:
        raise ValueError("symmetry check needs a full-period grid")
    mirror = slice(None, None, -1)
    rep = InvariantReport()

    def rel_check(name, a, b, sign):
        diff = a - sign * b[mirror]
        ref = max(float(np.max(np.abs(a))), 1e-300)
        err = float(np.max(np.abs(diff))) / ref
        k = np.unravel_index(int(np.argmax(np.abs(diff))), diff.shape)
        rep.checks.append(
            Check(name, PASS if err <= SYMMETRY_TOL else FAIL, SYMMETRY_TOL - err,
                  _loc(grid.x[k], grid.y[k]), {"relative_error": err})
        )

    rel_check("eta_even", grid.y[:, -1:], grid.y[:, -1:], 1)
    rel_check("u_even", grid.u, grid.u, 1)
    rel_check("P_even", grid.P, grid.P, 1)
    rel_check("v_odd", grid.v, grid.v, -1)

    eta = grid.y[:, -1]
    mid = (grid.nx - 1) // 2
    if _is_flat(state):
        rep.checks.append(Check("eta_monotone_half_period", DEGENERATE))
        rep.checks.append(Check("single_crest_and_trough", DEGENERATE))
        return rep
    drops = -np.diff(eta[: mid + 1]) / state.scaled.length_scale
    k = int(np.argmin(drops))
    rep.checks.append(
        Check("eta_monotone_half_period", _status(float(drops[k])), float(drops[k]),
              _loc(grid.x[k + 1, -1], eta[k + 1]))
    )
    ring = eta[:-1]
    left, right = np.roll(ring, 1), np.roll(ring, -1)
    n_max = int(np.sum((ring > left) & (ring > right)))
    n_min = int(np.sum((ring < left) & (ring < right)))
    rep.checks.append(
        Check("single_crest_and_trough", PASS if (n_max, n_min) == (1, 1) else FAIL,
              detail={"maxima": n_max, "minima": n_min})
    )
    return rep


# ---------------------------------------------------------------- interior exclusion


def check_interior_exclusion(state: FlowState, grid: FieldGrid) -> InvariantReport:
    """At the interior sample with the smallest |grad p|, P_x must be negative."""
    p = state.params
    if not p.is_deep:
        raise ValueError("interior exclusion is a deep-water check")
    rep = InvariantReport()
    if _is_flat(state):
        rep.checks.append(Check("interior_exclusion", DEGENERATE, detail={"reason": "p identically zero"}))
        return rep
    mask = _open_mask(grid)
    X, Y = grid.x[mask], grid.y[mask]
    h = FD_STEP * p.wavelength
    gx = (_raw_dynamic(state, X + h, Y) - _raw_dynamic(state, X - h, Y)) / (2 * h)
    gy = (_raw_dynamic(state, X, Y + h) - _raw_dynamic(state, X, Y - h)) / (2 * h)
    rg = p.density * p.gravity
    gnorm = np.hypot(gx, gy) / rg
    k = int(np.argmin(gnorm))
    px = pressure_x(state, X, Y) / rg
    margin_at = float(-px[k])
    j = int(np.argmin(-px))
    rep.checks.append(
        Check(
            "interior_exclusion",
            _status(margin_at),
            margin_at,
            _loc(X[k], Y[k]),
            {
                "min_grad_p_scaled": float(gnorm[k]),
                "P_x_at_min": float(px[k] * rg),
                "min_minus_P_x_scaled": float(-px[j]),
                "min_minus_P_x_location": _loc(X[j], Y[j]),
            },
        )
    )
    return rep


# ---------------------------------------------------------------- aggregate


@dataclass
class VerificationReport:
    """All checks for one state, in a fixed order."""

    entries: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures()

    def failures(self) -> list[str]:
        return [name for name, e in self.entries.items() if e.get("status") == FAIL]

    def verdicts(self) -> dict:
        """Booleans, statuses and node locations only (no floating margins)."""
        out = {}
        for name, e in self.entries.items():
            v = {"status": e.get("status")}
            for key in ("crest_is_max", "trough_is_min", "max_location", "min_location"):
                if key in e:
                    v[key] = e[key]
            if "checks" in e:
                v["checks"] = {c["name"]: c["status"] for c in e["checks"]}
            if "paths" in e:
                v["paths"] = {q["name"]: [q["status"], q["direction"]] for q in e["paths"]}
            out[name] = v
        return out

    def verdicts_json(self) -> str:
        return json.dumps(self.verdicts(), sort_keys=True)

    def to_dict(self):
        return {"passed": self.passed, "failures": self.failures(), "checks": self.entries}


def _invariant_entry(rep: InvariantReport) -> dict:
    statuses = [c.status for c in rep.checks]
    if FAIL in statuses:
        status = FAIL
    elif statuses and all(s == DEGENERATE for s in statuses):
        status = DEGENERATE
    elif INCONCLUSIVE in statuses:
        status = INCONCLUSIVE
    else:
        status = PASS
    return {"status": status, **rep.to_dict()}


def verify_state(
    state: FlowState,
    nx: int = 129,
    ny: int = 65,
    npath: int = 64,
    deep_check_depth: float = 1.0,
    current_levels=None,
) -> VerificationReport:
    """Run every check on one state.

    ``current_levels`` overrides the five equispaced depths at which the
    period-mean current is compared with ``k``.

    Deep-water strict sign checks use a grid reaching ``deep_check_depth``
    wavelengths below the mean level; extrema, monotonicity and the tail
    bound use the full truncation depth.
    """
    p = state.params
    L = p.wavelength
    rep = VerificationReport()
    e = rep.entries

    res = residual(state, 4, nondimensional=True)
    worst = max(res.kinematic_max, res.bernoulli_max, res.bed_max or 0.0)
    e["residuals"] = {"status": PASS if worst < RESIDUAL_TOL else FAIL, "bound": RESIDUAL_TOL,
                      **res.to_dict()}

    case = _current_case(state)
    if case == 0:
        e["degenerate_current"] = _invariant_entry(check_degenerate_current(state))
    else:
        e["degenerate_current"] = {"status": SKIPPED, "c_bar": state.c_bar}

    grid = fl.sample_grid(state, nx, ny, Region.HALF_PERIOD)
    try:
        ext = locate_extrema(grid)
        ok = ext.crest_is_max and ext.trough_is_min and ext.margin > 0
        e["extrema"] = {"status": PASS if ok else FAIL, **ext.to_dict()}
    except DegenerateField as exc:
        e["extrema"] = {"status": DEGENERATE, "reason": str(exc)}

    check_grid = grid
    if p.is_deep:
        check_grid = fl.sample_grid(state, nx, ny, Region.HALF_PERIOD, y_min=-deep_check_depth * L)
    e["sign_invariants"] = _invariant_entry(check_sign_invariants(state, check_grid))
    e["sign_invariants"]["grid_bottom"] = check_grid.y_bottom

    mono = check_monotonicity(state, npath)
    mono_status = DEGENERATE if mono.degenerate else (PASS if mono.satisfied else FAIL)
    if mono_status == PASS and any(q.status == INCONCLUSIVE for q in mono.paths):
        mono_status = INCONCLUSIVE
    e["monotonicity"] = {"status": mono_status, **mono.to_dict()}

    if case == 0 or _is_flat(state):
        e["elliptic_identity"] = {"status": DEGENERATE}
    else:
        try:
            coarse, fine, ratio = elliptic_convergence(state)
            lo, hi = ELLIPTIC_RATIO
            e["elliptic_identity"] = {
                "status": PASS if lo <= ratio <= hi else FAIL,
                "coarse": coarse.to_dict(),
                "fine": fine.to_dict(),
                "ratio": ratio,
            }
        except VanishingGradient as exc:
            e["elliptic_identity"] = {"status": DEGENERATE, "reason": str(exc)}

    full = fl.sample_grid(state, 2 * (nx // 2) + 1, max(3, ny // 2), Region.FULL_PERIOD)
    e["symmetry"] = _invariant_entry(check_symmetry(state, full))

    trough = fl.surface_at(state, 0.5 * L)
    low = -p.depth if not p.is_deep else trough - L
    if current_levels is None:
        levels = np.linspace(low, trough, 5)
    else:
        levels = np.asarray(current_levels, dtype=float)
    means = [fl.mean_current(state, y0) for y0 in levels]
    dev = max(abs(m - p.current) for m in means)
    bound = 1e-10 * max(state.wave_speed, 1.0)
    e["mean_current"] = {"status": PASS if dev < bound else FAIL, "levels": levels.tolist(),
                         "values": means, "max_deviation": dev, "bound": bound}

    if not p.is_deep:
        prof = fl.flux_profile(state)
        flux_dev = float(np.max(np.abs(prof - state.flux)))
        scale_m = math.sqrt(p.gravity * L) * p.depth
        ok = flux_dev < 1e-10 * scale_m
        expected = {1: "negative", -1: "positive", 0: "zero"}[case]
        sign_ok = {1: state.flux < 0, -1: state.flux > 0, 0: abs(state.flux) < DEGENERATE_TOL * scale_m}[case]
        e["flux"] = {"status": PASS if ok and sign_ok else FAIL, "m": state.flux,
                     "quadrature_max_deviation": flux_dev, "expected_sign": expected}
        e["interior_exclusion"] = {"status": SKIPPED, "reason": "finite depth"}
    else:
        e["interior_exclusion"] = _invariant_entry(check_interior_exclusion(state, check_grid))
    return rep
