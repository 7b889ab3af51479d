"""Time the compiled kernels against the pure-numpy fallback.

Run without arguments to get a side-by-side table: the script times the
backend it imported, then re-runs itself in a subprocess with
BEZPROJ_PURE_PYTHON=1 and merges the two reports.

    python benchmarks/kernel_timing.py
    python benchmarks/kernel_timing.py --json       # machine-readable
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def _time(fn, min_seconds=0.2):
    """Best-of timing loop; returns seconds per call."""
    fn()  # warm up
    n, t0 = 0, time.perf_counter()
    best = float("inf")
    while time.perf_counter() - t0 < min_seconds:
        s = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - s)
        n += 1
    return best


def run_suite():
    from bezproj._accel import COMPILED, bernstein_matrix, bspline_basis_matrix
    from bezproj.benchmark import sine_target, uniform_space
    from bezproj.projection import bezier_project

    rng = np.random.default_rng(0)
    xi = rng.uniform(-1.0, 1.0, size=4000)
    results = {"compiled": COMPILED}

    for p in (2, 4):
        results[f"bernstein_matrix p={p}, 4000 pts"] = _time(
            lambda: bernstein_matrix(p, xi)
        )

    space = uniform_space(3, 256)
    knots = space.knot_vectors[0].knots
    xs = rng.uniform(0.0, 1.0, size=4000)
    results["bspline_basis_matrix p=3, 256 els, 4000 pts"] = _time(
        lambda: bspline_basis_matrix(knots, 3, xs)
    )

    f = sine_target()
    proj_space = uniform_space(3, 512)
    results["bezier_project sine p=3, 512 els"] = _time(
        lambda: bezier_project(f, proj_space), min_seconds=0.5
    )
    return results


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--json", action="store_true", help="emit one JSON report")
    ap.add_argument("--single", action="store_true",
                    help="time only the current backend (no subprocess)")
    args = ap.parse_args()

    mine = run_suite()
    if args.single or args.json:
        print(json.dumps(mine, indent=None if args.json else 2))
        return

    env = dict(os.environ, BEZPROJ_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--json", "--single"],
        env=env, capture_output=True, text=True, check=True,
    )
    other = json.loads(out.stdout)

    fast, slow = (mine, other) if mine["compiled"] else (other, mine)
    if fast["compiled"] == slow["compiled"]:
        print("compiled extension not available; fallback timings only\n")
        for key, val in mine.items():
            if key != "compiled":
                print(f"{key:48s} {val * 1e6:10.1f} us")
        return

    print(f"{'kernel':48s} {'compiled':>12s} {'fallback':>12s} {'speedup':>9s}")
    for key in fast:
        if key == "compiled":
            continue
        a, b = fast[key], slow[key]
        print(f"{key:48s} {a * 1e6:10.1f} us {b * 1e6:10.1f} us {b / a:8.1f}x")


if __name__ == "__main__":
    main()
