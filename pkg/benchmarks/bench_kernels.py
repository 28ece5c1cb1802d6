#!/usr/bin/env python3
"""Compare the compiled and numpy kernel backends.

Times ``basis``/``series`` at a few problem sizes and one end-to-end
solve + verify per backend, then prints a table with the speedups.

    python benchmarks/bench_kernels.py [--repeat 5] [--modes 32]
"""

import argparse
import math
import timeit

import numpy as np

from dynpressure import WaveParameters, kernels, solve, verify_state


def _best(fn, repeat, number):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def bench_kernel(backends, npts, modes, depth, repeat):
    rng = np.random.default_rng(0)
    x = rng.uniform(0, 2 * math.pi, npts)
    y = rng.uniform(-1.0, 0.2, npts)
    b = rng.normal(size=modes) * np.exp(-0.3 * np.arange(modes))
    out = {}
    for name, mod in backends.items():
        out[("basis", name)] = _best(lambda: mod.basis(x, y, modes, depth), repeat, 5)
        out[("series", name)] = _best(lambda: mod.series(b, x, y, depth), repeat, 5)
    return out


def bench_pipeline(backends, modes, repeat):
    params = WaveParameters(wavelength=10.0, depth=3.0, height=0.6, modes=modes)
    out = {}
    saved = kernels.basis, kernels.series
    try:
        for name, mod in backends.items():
            kernels.basis, kernels.series = mod.basis, mod.series
            out[name] = _best(lambda: verify_state(solve(params)), repeat, 1)
    finally:
        kernels.basis, kernels.series = saved
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--modes", type=int, default=32)
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    names = sorted(backends)
    print(f"backends: {', '.join(names)} (selected at import: {kernels.BACKEND})")
    if "cython" not in backends:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation`")

    print(f"\n{'kernel':<8}{'points':>8}{'depth':>8}" + "".join(f"{n + ' [ms]':>16}" for n in names)
          + ("    speedup" if len(names) > 1 else ""))
    for npts in (65, 1024, 8385):
        for depth in (2.0, math.inf):
            t = bench_kernel(backends, npts, args.modes, depth, args.repeat)
            for kind in ("basis", "series"):
                row = f"{kind:<8}{npts:>8}{depth:>8.3g}"
                row += "".join(f"{1e3 * t[(kind, n)]:>16.3f}" for n in names)
                if len(names) > 1:
                    row += f"{t[(kind, 'python')] / t[(kind, 'cython')]:>10.2f}x"
                print(row)

    t = bench_pipeline(backends, args.modes, max(1, args.repeat // 2))
    print("\nsolve + verify_state (d/L=0.3, H/L=0.06):")
    for n in names:
        print(f"  {n:<8}{1e3 * t[n]:>10.1f} ms")
    if len(names) > 1:
        print(f"  speedup {t['python'] / t['cython']:.2f}x")


if __name__ == "__main__":
    main()
