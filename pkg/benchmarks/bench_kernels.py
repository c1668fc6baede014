"""Time the pure-Python and compiled kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--n 5000] [--repeat 5]
"""

import argparse
import time

import numpy as np

from mrtrend import _accel, _pykernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases(n, rng):
    x = 100 + rng.standard_normal(n).cumsum()
    state = np.sign(np.round(np.sin(np.arange(n) / 9.0) + 0.3 * rng.standard_normal(n), 0))
    state = state.astype(np.int8)
    m = min(n, 1500)
    tau = np.arange(m, dtype=np.float64)
    y = x[:m] - x[:m].mean()
    periods = np.arange(20.0, 2.0 * m + 1)
    return [
        ("local_extrema(w=10)", lambda k: k.local_extrema(x, 10)),
        ("scan_line_states(confirm=3)", lambda k: k.scan_line_states(state, 3)),
        (f"sinusoid_grid({m} pts, {periods.size} periods)",
         lambda k: k.sinusoid_grid(tau, y, periods)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=5000, help="series length")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    compiled = _accel.compiled_kernels
    if compiled is None:
        print("compiled kernels not built; timing the Python fallback only")
    print(f"{'kernel':44s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, fn in cases(args.n, np.random.default_rng(args.seed)):
        tp = best_of(lambda: fn(_pykernels), args.repeat)
        if compiled is None:
            print(f"{name:44s} {tp * 1e3:9.2f}ms {'-':>10s} {'-':>8s}")
            continue
        tc = best_of(lambda: fn(compiled), args.repeat)
        print(f"{name:44s} {tp * 1e3:9.2f}ms {tc * 1e3:9.2f}ms {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
