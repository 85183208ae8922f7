"""Benchmark the integer polynomial kernels and the end-to-end series build.

The coefficient ring funnels its arithmetic through four list-of-int
primitives (sheafcount._kernels).  A compiled twin with the same signatures
can be dropped in as sheafcount._speedups; this script measures what that
would buy.  Run with --compare to time the pure backend against whatever
backend a plain import selects (they only differ if _speedups is installed).

Measured on the workloads the package actually runs, the pure kernels are
nowhere near the budget that would justify a compiled core: the refined
rank-3 series at full table depth builds in well under a tenth of a second.
"""

import argparse
import os
import random
import subprocess
import sys
import time
from fractions import Fraction


def bench_micro(sizes, trials, seed):
    from sheafcount._kernels import BACKEND, conv, divexact, poly_gcd

    rng = random.Random(seed)
    rows = [("backend", BACKEND)]
    for n in sizes:
        a = [rng.randint(-9, 9) for _ in range(n)] + [1]
        b = [rng.randint(-9, 9) for _ in range(n)] + [1]
        reps = max(1, trials // max(n, 1))
        t0 = time.perf_counter()
        for _ in range(reps):
            ab = conv(a, b)
        t_conv = (time.perf_counter() - t0) / reps
        t0 = time.perf_counter()
        for _ in range(reps):
            divexact(ab, b)
        t_div = (time.perf_counter() - t0) / reps
        t0 = time.perf_counter()
        for _ in range(reps):
            poly_gcd(ab, a)
        t_gcd = (time.perf_counter() - t0) / reps
        rows.append((f"conv n={n}", f"{t_conv * 1e6:9.1f} us"))
        rows.append((f"divexact n={n}", f"{t_div * 1e6:9.1f} us"))
        rows.append((f"poly_gcd n={n}", f"{t_gcd * 1e6:9.1f} us"))
    return rows


def bench_series():
    from sheafcount.geometry import J10
    from sheafcount.wallcross import _CACHE, h3

    rows = []
    for label, refined, cut in (
        ("h3 unrefined, Euler-series depth", False, Fraction(25, 6)),
        ("h3 refined, Betti-table depth", True, Fraction(127, 24)),
    ):
        _CACHE.clear()
        t0 = time.perf_counter()
        h3(J10, refined, cut)
        rows.append((label, f"{time.perf_counter() - t0:9.3f} s "))
    return rows


def run_once(args):
    for name, val in bench_micro(args.sizes, args.trials, args.seed):
        print(f"{name:36s} {val}")
    if not args.micro_only:
        for name, val in bench_series():
            print(f"{name:36s} {val}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[16, 64, 256])
    ap.add_argument("--trials", type=int, default=20000,
                    help="total work per size; repetitions scale as trials/n")
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--micro-only", action="store_true")
    ap.add_argument("--compare", action="store_true",
                    help="run twice: pure backend vs the default import")
    args = ap.parse_args()
    if not args.compare:
        run_once(args)
        return
    base = [sys.argv[0], "--sizes", *map(str, args.sizes),
            "--trials", str(args.trials), "--seed", str(args.seed)]
    if args.micro_only:
        base.append("--micro-only")
    for label, pure in (("pure", "1"), ("default import", "")):
        env = dict(os.environ)
        if pure:
            env["SHEAFCOUNT_PURE"] = pure
        else:
            env.pop("SHEAFCOUNT_PURE", None)
        print(f"--- {label} ---", flush=True)
        subprocess.run([sys.executable, *base], env=env, check=True)


if __name__ == "__main__":
    main()
