"""Compare the compiled and pure-Python basis-objective kernels.

    python benchmarks/bench_kernels.py [--repeats N]

Times the three kernel entry points on random two-qubit states and the
full ``minimize_over_bases`` driver with each backend swapped in.
"""
import argparse
import math
import time

import numpy as np

from superdiscord import _pykernels, corr, kernels
from superdiscord.states import random_density

try:
    from superdiscord import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeats):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_backend(impl, blocks, repeats):
    thetas = np.linspace(0, math.pi, 64)
    phis = 2 * math.pi * np.arange(128) / 128
    t = math.tanh(0.5)
    return {
        "objective x1000": best_of(
            lambda: [impl.objective(blocks, 0.3 + 1e-3 * i, 1.1, t) for i in range(1000)], repeats),
        "objective_grid 64x128": best_of(
            lambda: impl.objective_grid(blocks, thetas, phis, t), repeats),
        "golden_section x100": best_of(
            lambda: [impl.golden_section(blocks, 1.0, 2.0, t, i % 2, 0.9, 1.1, 1e-9)
                     for i in range(100)], repeats),
    }


def bench_minimizer(impl, states, repeats):
    saved = (kernels.objective, kernels.objective_grid, kernels.golden_section)
    kernels.objective, kernels.objective_grid, kernels.golden_section = (
        impl.objective, impl.objective_grid, impl.golden_section)
    try:
        return best_of(lambda: [corr.minimize_over_bases(s, 0.5) for s in states], repeats) / len(states)
    finally:
        kernels.objective, kernels.objective_grid, kernels.golden_section = saved


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    states = [random_density(i) for i in range(10)]
    blocks = kernels.reduce_blocks(states[0].mat)
    backends = [("python", _pykernels)]
    if _ckernels is not None:
        backends.append(("cython", _ckernels))
    else:
        print("compiled kernel not built; timing the fallback only")

    results = {name: bench_backend(impl, blocks, args.repeats) for name, impl in backends}
    results_min = {name: bench_minimizer(impl, states, args.repeats) for name, impl in backends}

    print(f"{'kernel':<24}" + "".join(f"{name:>14}" for name, _ in backends) + "     speedup")
    for key in results["python"]:
        row = [results[name][key] for name, _ in backends]
        speed = f"{row[0] / row[-1]:10.1f}x" if len(row) > 1 else ""
        print(f"{key:<24}" + "".join(f"{v * 1e3:12.3f}ms" for v in row) + speed)
    row = [results_min[name] for name, _ in backends]
    speed = f"{row[0] / row[-1]:10.1f}x" if len(row) > 1 else ""
    print(f"{'minimize_over_bases':<24}" + "".join(f"{v * 1e3:12.3f}ms" for v in row) + speed)


if __name__ == "__main__":
    main()
