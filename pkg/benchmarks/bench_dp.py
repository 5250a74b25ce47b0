#!/usr/bin/env python3
"""Benchmark the decoder's forward pass: compiled kernel vs numpy fallback.

Usage:
    python3 benchmarks/bench_dp.py [--frames 2000] [--slides 200] [--repeats 5]
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from mavils import AlignmentConfig, _dp_py
from mavils.align import jump_penalty_matrix, linear_penalty_matrix

try:
    from mavils import _native
except ImportError:
    _native = None


def time_backend(fn, S, P, L, repeats: int) -> list[float]:
    fn(S, P, L)  # warm-up
    samples = []
    for _ in range(repeats):
        started = time.perf_counter()
        fn(S, P, L)
        samples.append(time.perf_counter() - started)
    return samples


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--frames", type=int, default=2000)
    parser.add_argument("--slides", type=int, default=200)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    S = rng.uniform(-1, 1, (args.frames, args.slides))
    cfg = AlignmentConfig(lambda_jump=0.1, lambda_linear=1e-4)
    P = jump_penalty_matrix(args.slides, cfg.lambda_jump, cfg.jump_direction_mode)
    L = linear_penalty_matrix(args.frames, args.slides, cfg)

    print(f"forward pass at n={args.frames}, m={args.slides} ({args.repeats} repeats)")
    results = {}
    backends = [("python (numpy)", _dp_py.dp_forward)]
    if _native is not None:
        backends.append(("native (compiled)", _native.dp_forward))
    else:
        print("note: compiled kernel not built; benchmarking the fallback only")

    for name, fn in backends:
        samples = time_backend(fn, S, P, L, args.repeats)
        results[name] = statistics.median(samples)
        print(f"  {name:<18} median {results[name] * 1000:8.1f} ms  (min {min(samples) * 1000:.1f} ms)")

    if len(results) == 2:
        py, nat = results["python (numpy)"], results["native (compiled)"]
        print(f"  speedup: {py / nat:.2f}x")

        d_py, b_py = _dp_py.dp_forward(S, P, L)
        d_nat, b_nat = _native.dp_forward(S, P, L)
        identical = np.array_equal(d_py, d_nat) and np.array_equal(b_py, np.asarray(b_nat))
        print(f"  outputs bit-identical: {identical}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
