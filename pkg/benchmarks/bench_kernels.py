#!/usr/bin/env python3
"""Benchmark the evolution kernels: numba backend vs pure-numpy fallback.

The backend is fixed at import time by the QPWALK_NUMBA environment variable,
so this script re-executes itself in a subprocess per backend and compares the
timings. Run from the repository root after installing the package:

    python3 benchmarks/bench_kernels.py            # both backends, table
    python3 benchmarks/bench_kernels.py --repeat 5 # more repetitions

Workloads cover the regimes that matter in practice:

- spreading: a rational-field walk whose window grows ballistically, so the
  per-step cost rises linearly with time;
- localized: the golden-ratio field, where boundary trimming keeps the live
  window at a few thousand sites regardless of horizon;
- electric:  the shift-coin-phase walk used for gauge-equivalence checks;
- origin-tracking: evolution that also records the return probability series.
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time


def _workloads():
    import numpy as np

    from qpwalk import gauge, walk

    golden = walk.Field.golden()
    rational = walk.Field.rational(1, 7)
    rx_golden = walk.hadamard_params(golden, time_rule="RX_FIELD")
    rx_rational = walk.hadamard_params(rational, time_rule="RX_FIELD")
    start = walk.WalkState.single_site(0, (1.0, 0.0))
    coin = np.array([[1.0, 1.0], [-1.0, 1.0]], dtype=complex) / np.sqrt(2.0)
    phi = 2.0 * np.pi * golden.value

    def scan_pattern():
        for _ in range(2000):
            walk.evolve(start, 1, 33, rx_rational)

    return [
        ("2000 short evolutions t=32 (scan pattern)", scan_pattern),
        ("spreading t=3000 (field 1/7)",
         lambda: walk.evolve(start, 1, 3001, rx_rational)),
        ("localized t=10000 (golden field)",
         lambda: walk.evolve(start, 1, 10001, rx_golden)),
        ("electric t=10000 (golden field)",
         lambda: gauge.electric_evolve(start, 10000, phi, coin)),
        ("origin-tracking t=10000 (golden field)",
         lambda: walk.evolve_tracking_origin(start, 10000, rx_golden)),
    ]


def run_worker(repeat: int) -> None:
    from qpwalk import _kernels

    results = {"backend": _kernels.backend_name(), "timings": {}}
    for name, fn in _workloads():
        fn()  # warm up: jit compilation, caches
        best = min(
            (lambda t0=time.perf_counter(): (fn(), time.perf_counter() - t0)[1])()
            for _ in range(repeat)
        )
        results["timings"][name] = best
    print(json.dumps(results))


def run_backend(flag: str, repeat: int) -> dict:
    env = dict(os.environ, QPWALK_NUMBA=flag)
    proc = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--worker",
         "--repeat", str(repeat)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3,
                    help="repetitions per workload; best time wins (default 3)")
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()

    if args.worker:
        run_worker(args.repeat)
        return 0

    numba_res = run_backend("1", args.repeat)
    numpy_res = run_backend("0", args.repeat)

    names = list(numba_res["timings"])
    width = max(len(n) for n in names)
    print(f"{'workload':<{width}}  {'numba':>9}  {'numpy':>9}  {'speedup':>7}")
    print("-" * (width + 31))
    for name in names:
        tb = numba_res["timings"][name]
        tn = numpy_res["timings"][name]
        print(f"{name:<{width}}  {tb:>8.3f}s  {tn:>8.3f}s  {tn / tb:>6.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
