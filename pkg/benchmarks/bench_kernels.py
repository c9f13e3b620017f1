"""Timing comparison of the kernel backends.

Runs the two hot paths of the finite flag machinery, stacked row
reduction and stacked modular products, under every available backend
and prints a small table.  The same work runs under each backend, so
the ratio column is a direct speedup measurement.

    python3 benchmarks/bench_kernels.py --batch 4000 --rows 6 --repeat 5
"""

import argparse
import time

import numpy as np

from bruhat_satake import kernels


def workload_rref(rng: np.random.Generator, batch: int, rows: int, q: int):
    mats = rng.integers(0, q, size=(batch, rows, 2 * rows)).astype(np.int8)

    def run():
        _, ranks = kernels.rref_mod(mats, q)
        return int(ranks.sum())

    return run


def workload_matmul(rng: np.random.Generator, batch: int, rows: int, q: int):
    stack = rng.integers(0, q, size=(batch, rows, rows)).astype(np.int8)
    gen = rng.integers(0, q, size=(rows, rows)).astype(np.int8)

    def run():
        out = stack
        for _ in range(8):
            out = kernels.matmul_mod(out, gen, q)
        return int(out.sum())

    return run


def time_one(run, repeat: int) -> tuple[float, int]:
    check = run()  # warm the jit cache before the clock starts
    best = min(timed(run) for _ in range(repeat))
    return best, check


def timed(run) -> float:
    t0 = time.perf_counter()
    run()
    return time.perf_counter() - t0


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--batch", type=int, default=4000, help="matrices per stack")
    parser.add_argument("--rows", type=int, default=6, help="rows per matrix")
    parser.add_argument("--q", type=int, default=5, help="modulus")
    parser.add_argument("--repeat", type=int, default=5, help="timed repetitions, best kept")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}   batch={args.batch} rows={args.rows} q={args.q}")
    header = f"{'workload':<10} " + " ".join(f"{b:>12}" for b in backends) + f" {'ratio':>8}"
    print(header)
    print("-" * len(header))

    previous = kernels.backend_name()
    try:
        for name, factory in (("rref", workload_rref), ("matmul", workload_matmul)):
            times = []
            checks = []
            for backend in backends:
                kernels.set_backend(backend)
                rng = np.random.default_rng(args.seed)
                run = factory(rng, args.batch, args.rows, args.q)
                best, check = time_one(run, args.repeat)
                times.append(best)
                checks.append(check)
            if len(set(checks)) != 1:
                raise SystemExit(f"{name}: backends disagree: {checks}")
            ratio = times[-1] / times[0] if times[0] else float("inf")
            cells = " ".join(f"{t * 1000:>10.2f}ms" for t in times)
            print(f"{name:<10} {cells} {ratio:>7.1f}x")
    finally:
        kernels.set_backend(previous)


if __name__ == "__main__":
    main()
