"""Compare the compiled and pure-Python kernel backends.

Usage::

    python3 benchmarks/bench_kernels.py [--points 200000] [--omega 200] [--repeat 3]

Reports the best-of-``repeat`` wall time per kernel and backend, the speedup
of the compiled backend, and the largest disagreement between the two.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from coeff_bounds.kernels import available_backends, get_backend
from coeff_bounds.omega import stratified_inputs


def _best(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_delta(mod, pts, repeat):
    b = (2, 3, 4, 5)
    return _best(lambda: mod.delta_abs_batch(b, 5, pts, True), repeat)


def bench_point(mod, pts, repeat):
    b = (1, 1, 1, 1)
    rows = pts[:2000]
    return _best(lambda: np.array([mod.delta_abs_point(b, 5, x, True) for x in rows]), repeat)


def bench_omega(mod, inputs, repeat):
    return _best(lambda: np.array([mod.omega_oracle(*i.as_tuple(), 64, 2000)[0] for i in inputs]), repeat)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=200_000, help="rows for the batch objective")
    ap.add_argument("--omega", type=int, default=200, help="Omega oracle calls")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    # real zeta_1 followed by three points of the unit disk
    z1 = rng.uniform(-1, 1, (args.points, 1))
    r = np.sqrt(rng.random((args.points, 3)))
    a = rng.random((args.points, 3)) * 2 * np.pi
    disks = np.stack([r * np.cos(a), r * np.sin(a)], axis=2).reshape(args.points, 6)
    pts = np.hstack([z1, disks])
    inputs = stratified_inputs(args.seed, max(args.omega, 7), per_branch=max(args.omega // 7, 1))

    backends = available_backends()
    if "cython" not in backends:
        print("compiled backend not built; timing the Python backend only")
    cases = [
        ("delta_abs_batch (n=5)", lambda m: bench_delta(m, pts, args.repeat), args.points),
        ("delta_abs_point (n=5)", lambda m: bench_point(m, pts, args.repeat), min(2000, args.points)),
        ("omega_oracle", lambda m: bench_omega(m, inputs, args.repeat), len(inputs)),
    ]
    print(f"{'kernel':24s} {'calls':>8s} " + " ".join(f"{b + ' [s]':>12s}" for b in backends)
          + f" {'speedup':>8s} {'max diff':>10s}")
    for name, run, calls in cases:
        times, outs = {}, {}
        for b in backends:
            times[b], outs[b] = run(get_backend(b))
        line = f"{name:24s} {calls:8d} " + " ".join(f"{times[b]:12.4f}" for b in backends)
        if len(backends) == 2:
            speed = times["python"] / times["cython"]
            diff = float(np.max(np.abs(outs["python"] - outs["cython"])))
            line += f" {speed:8.1f} {diff:10.2e}"
        print(line)


if __name__ == "__main__":
    main()
