"""Command-line front end: ``dynpressure {solve,verify,field,sweep} CONFIG``.

The config file holds ``key = value`` lines with ``#`` comments.  Outputs
land in ``--out DIR`` (else the ``out`` key, else the config's folder).

Exit codes: 0 ok, 1 config error, 2 no convergence, 3 invariant
violation, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import fields as fl
from .errors import (
    ConfigError,
    DeepWithCurrent,
    DynPressureError,
    MissingRequired,
    NoConvergence,
    ParameterError,
    TypeMismatch,
    UnknownKey,
)
from .model import DEEP, FlowState, Region, WaveParameters, validate
from .solver import SolverSettings, iter_continuation, residual, solve
from .verify import verify_state

log = logging.getLogger("dynpressure")

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NO_CONVERGENCE = 2
EXIT_VIOLATION = 3
EXIT_IO = 4

FIELD_HEADER = ("x", "y", "psi", "u", "v", "P", "p_dyn")
SWEEP_HEADER = (
    "H", "c", "Q_or_E", "m", "max_p", "min_p",
    "crest_is_max", "trough_is_min", "newton_iters", "wall_ms",
)


def _float(text):
    return float(text)


def _int(text):
    return int(text)


def _depth(text):
    if text.strip().lower() == "deep":
        return DEEP
    return float(text)


def _floats(text):
    return tuple(float(t) for t in text.split(",") if t.strip())


def _region(text):
    return Region(text.strip().lower()).value


# config key -> (parser, destination)
_KEYS = {
    "L": (_float, "wavelength"),
    "depth": (_depth, "depth"),
    "current": (_float, "current"),
    "density": (_float, "density"),
    "gravity": (_float, "gravity"),
    "p_atm": (_float, "p_atm"),
    "height": (_float, "height"),
    "modes": (_int, "modes"),
    "surface_nodes": (_int, "surface_nodes"),
    "wave_speed": (_float, "wave_speed"),
    "branch": (_int, "branch"),
    "newton_tol": (_float, "newton_tol"),
    "max_iters": (_int, "max_newton_iters"),
    "continuation_steps": (_int, "continuation_steps"),
    "damping": (_float, "damping"),
    "nx": (_int, "nx"),
    "ny": (_int, "ny"),
    "heights": (_floats, "heights"),
    "y0": (_floats, "y0"),
    "out": (str, "out"),
    "region": (_region, "region"),
}
_PARAM_KEYS = {"wavelength", "depth", "current", "density", "gravity", "p_atm", "height",
               "modes", "surface_nodes", "wave_speed", "branch"}
_SETTING_KEYS = {"newton_tol", "max_newton_iters", "continuation_steps", "damping"}


@dataclass(frozen=True)
class RunConfig:
    params: WaveParameters
    settings: SolverSettings = field(default_factory=SolverSettings)
    nx: int = 129
    ny: int = 65
    out: Path | None = None
    heights: tuple[float, ...] | None = None
    y0: tuple[float, ...] | None = None
    region: str = Region.HALF_PERIOD.value


def parse_config(source: str) -> RunConfig:
    """Parse ``key = value`` text into a RunConfig with defaults filled in."""
    raw = {}
    for lineno, line in enumerate(source.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _KEYS:
            raise UnknownKey(f"line {lineno}: unknown key {key!r}")
        parse, dest = _KEYS[key]
        if dest in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            raw[dest] = parse(value)
        except ValueError:
            raise TypeMismatch(f"line {lineno}: bad value {value!r} for {key!r}") from None

    # the deep/current clash is reported even when L is missing
    if raw.get("depth") == DEEP and raw.get("current", 0.0) != 0.0:
        raise DeepWithCurrent("deep water carries no underlying current", "current")
    for key, dest in (("L", "wavelength"), ("depth", "depth")):
        if dest not in raw:
            raise MissingRequired(f"missing required key {key!r}")

    params = validate({k: v for k, v in raw.items() if k in _PARAM_KEYS})
    settings = SolverSettings(**{k: v for k, v in raw.items() if k in _SETTING_KEYS})
    extra = {k: raw[k] for k in ("nx", "ny", "heights", "y0", "region") if k in raw}
    if "out" in raw:
        extra["out"] = Path(raw["out"])
    cfg = RunConfig(params=params, settings=settings, **extra)
    if cfg.nx < 3 or cfg.ny < 3:
        raise ConfigError("nx and ny must be >= 3")
    return cfg


# ---------------------------------------------------------------- output


def _clean(obj):
    """JSON-safe copy: numpy scalars to Python, non-finite floats to None."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    return obj


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json(path: Path, obj) -> None:
    _atomic_write(path, json.dumps(_clean(obj), indent=2, sort_keys=True) + "\n")


def _g(v) -> str:
    return "%.17g" % (v + 0.0)  # folds -0.0 into 0


def field_csv(state: FlowState, nx: int, ny: int, region=Region.HALF_PERIOD) -> str:
    """Field sample as CSV text, column by column then sigma level."""
    grid = fl.sample_grid(state, nx, ny, Region(region))
    cols = [getattr(grid, name).ravel() for name in FIELD_HEADER]
    buf = io.StringIO()
    buf.write(",".join(FIELD_HEADER) + "\n")
    for row in zip(*cols):
        buf.write(",".join(_g(v) for v in row) + "\n")
    return buf.getvalue()


# ---------------------------------------------------------------- commands


def _out_dir(cfg: RunConfig) -> Path:
    return cfg.out if cfg.out is not None else Path(".")


def _solve_and_store(cfg: RunConfig, out: Path) -> FlowState:
    state = solve(cfg.params, cfg.settings)
    write_json(out / "state.json", state.to_dict())
    write_json(out / "residuals.json", {
        "newton_residual": state.residual_norm,
        "newton_iters": state.newton_iters,
        "newton_tol": cfg.settings.newton_tol,
        "dimensional": residual(state).to_dict(),
        "nondimensional": residual(state, nondimensional=True).to_dict(),
    })
    return state


def _load_or_solve(cfg: RunConfig, out: Path) -> FlowState:
    """Reuse ``state.json`` when it was produced for the same parameters."""
    path = out / "state.json"
    if path.exists():
        try:
            with open(path) as fh:
                state = FlowState.from_dict(json.load(fh))
        except (ValueError, KeyError, TypeError) as exc:
            raise OSError(f"unreadable state file {path}: {exc}") from exc
        if state.params == cfg.params:
            log.info("reusing %s", path)
            return state
        log.info("%s belongs to other parameters, solving again", path)
    return _solve_and_store(cfg, out)


def cmd_solve(cfg: RunConfig) -> int:
    state = _solve_and_store(cfg, _out_dir(cfg))
    log.info("c = %.12g m/s after %d Newton iterations", state.wave_speed, state.newton_iters)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    out = _out_dir(cfg)
    state = _load_or_solve(cfg, out)
    rep = verify_state(state, cfg.nx, cfg.ny, current_levels=cfg.y0)
    write_json(out / "report.json", rep.to_dict())
    if not rep.passed:
        print(f"invariant violated: {', '.join(rep.failures())}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_field(cfg: RunConfig) -> int:
    out = _out_dir(cfg)
    state = _load_or_solve(cfg, out)
    _atomic_write(out / "field.csv", field_csv(state, cfg.nx, cfg.ny, cfg.region))
    return EXIT_OK


def _sweep_row(state: FlowState, rep, nx: int, ny: int, ms: float) -> list[str]:
    ext = rep.entries["extrema"]
    if "max_value" in ext:
        pmax, pmin = ext["max_value"], ext["min_value"]
        crest, trough = str(ext["crest_is_max"]).lower(), str(ext["trough_is_min"]).lower()
    else:
        # degenerate field: no distinguished extremum
        p_dyn = fl.sample_grid(state, nx, ny).p_dyn
        pmax, pmin = float(p_dyn.max()), float(p_dyn.min())
        crest = trough = "na"
    m = state.flux if state.flux is not None else math.nan
    return [
        _g(state.params.height), _g(state.wave_speed), _g(state.head), _g(m),
        _g(pmax), _g(pmin), crest, trough, str(state.newton_iters), "%.3f" % ms,
    ]


def cmd_sweep(cfg: RunConfig) -> int:
    if not cfg.heights:
        raise MissingRequired("sweep needs a 'heights' list")
    out = _out_dir(cfg)
    path = out / "sweep.csv"
    rows = []
    failed = []

    def flush():
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(SWEEP_HEADER)
        w.writerows(rows)
        _atomic_write(path, buf.getvalue())

    steps = iter_continuation(cfg.params, cfg.heights, cfg.settings)
    while True:
        t0 = time.perf_counter()
        try:
            state = next(steps)
        except StopIteration:
            break
        except NoConvergence:
            flush()
            raise
        rep = verify_state(state, cfg.nx, cfg.ny, current_levels=cfg.y0)
        rows.append(_sweep_row(state, rep, cfg.nx, cfg.ny, 1e3 * (time.perf_counter() - t0)))
        if not rep.passed:
            failed.append(f"H={state.params.height:g}: {', '.join(rep.failures())}")
    flush()
    if failed:
        print("invariant violated: " + "; ".join(failed), file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


COMMANDS = {"solve": cmd_solve, "verify": cmd_verify, "field": cmd_field, "sweep": cmd_sweep}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dynpressure",
        description="Steady periodic water waves: solve, verify pressure extrema, export fields.",
    )
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("config", type=Path, help="key = value run configuration")
    ap.add_argument("--out", type=Path, default=None, help="output directory")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        text = args.config.read_text()
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        cfg = parse_config(text)
        if args.out is not None:
            cfg = RunConfig(**{**cfg.__dict__, "out": args.out})
        elif cfg.out is None:
            cfg = RunConfig(**{**cfg.__dict__, "out": args.config.parent})
        elif not cfg.out.is_absolute():
            cfg = RunConfig(**{**cfg.__dict__, "out": args.config.parent / cfg.out})
        return COMMANDS[args.command](cfg)
    except (ConfigError, ParameterError) as exc:
        print(f"config error ({exc.code}): {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NoConvergence as exc:
        where = "" if exc.step is None else f" at sweep step {exc.step}"
        print(f"no convergence{where}: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (DynPressureError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
