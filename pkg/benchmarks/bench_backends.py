#!/usr/bin/env python3
"""Time the hot kernels under the numba and pure-numpy backends.

The backend is fixed at import time by ORTHOREG_BACKEND, so the parent
process spawns one worker per backend and the worker does the timing.

    python benchmarks/bench_backends.py [--repeat 5] [--csv results.csv]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def time_kernels(repeat):
    import numpy as np

    from orthoreg import _backend, _kernels

    rng = np.random.default_rng(0)
    n = 18
    mats = rng.uniform(-1.0, 1.0, (32, n, n))
    vecs = rng.uniform(-1.0, 1.0, (32, n))
    eye = np.eye(n)

    def run_svd():
        for a in mats:
            _kernels.jacobi_svd(a, 30 * n * n, 1e-14)

    def run_solve():
        for a, y in zip(mats, vecs):
            _kernels.gauss_solve(a + 3.0 * eye, y.reshape(-1, 1))

    def run_quartic():
        for a in mats[:8]:
            _kernels.quartic_descent(a, 0.8, 1e-8, 400, a)

    def run_bpdn():
        for a, y in zip(mats[:8], vecs[:8]):
            _kernels.bpdn_iterate(a + 3.0 * eye, y, 0.1, 400, 1e-10, 4.0)

    kernels = [
        ("jacobi_svd", run_svd),
        ("gauss_solve", run_solve),
        ("quartic_descent", run_quartic),
        ("bpdn_iterate", run_bpdn),
    ]

    results = {}
    for name, fn in kernels:
        fn()  # warm-up (JIT compilation on the numba backend)
        times = []
        for _ in range(repeat):
            t0 = time.perf_counter()
            fn()
            times.append(time.perf_counter() - t0)
        results[name] = min(times)
    return _backend.BACKEND_NAME, results


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--csv", default=None, help="also write results to this CSV path")
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.worker:
        backend, results = time_kernels(args.repeat)
        print(json.dumps({"backend": backend, "results": results}))
        return

    rows = {}
    for backend in ("numba", "numpy"):
        env = dict(os.environ, ORTHOREG_BACKEND=backend)
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--worker", "--repeat", str(args.repeat)],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        payload = json.loads(out.stdout.splitlines()[-1])
        rows[payload["backend"]] = payload["results"]

    names = list(rows["numba"])
    width = max(len(n) for n in names)
    print("%-*s %12s %12s %8s" % (width, "kernel", "numba [ms]", "numpy [ms]", "speedup"))
    lines = ["kernel,numba_seconds,numpy_seconds,speedup"]
    for name in names:
        tb = rows["numba"][name]
        tp = rows["numpy"][name]
        print("%-*s %12.3f %12.3f %7.1fx" % (width, name, tb * 1e3, tp * 1e3, tp / tb))
        lines.append("%s,%.9g,%.9g,%.3f" % (name, tb, tp, tp / tb))
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        print("wrote %s" % args.csv)


if __name__ == "__main__":
    main()
