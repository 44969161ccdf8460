"""Compiled kernels against the pure-Python fallback on the same runs.

    python3 benchmarks/bench_kernels.py [--n 256 1024] [--s 16]

Both backends must agree on reads, peak words and the window set; only
wall time differs.  Setting KVIS_NO_NUMBA=1 removes the compiled column.
"""

import argparse
import time

from kvis import kernels
from kvis.batched import windows_batched_all
from kvis.core import windows_constant
from kvis.engine import Engine
from kvis.generate import star
from kvis.memory import WorkspaceMeter
from kvis.records import window_set


def timed(scene, run):
    meter = WorkspaceMeter()
    eng = Engine(scene, meter)
    t0 = time.perf_counter()
    out = run(scene, eng)
    return time.perf_counter() - t0, eng.view.reads, meter.peak_words, window_set(out.records())


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, nargs="+", default=[256, 1024])
    ap.add_argument("--s", type=int, default=16)
    ap.add_argument("--k", type=int, default=0)
    args = ap.parse_args()
    runs = {
        "const": lambda sc, e: windows_constant(sc, engine=e),
        f"batch-all s={args.s}": lambda sc, e: windows_batched_all(sc, args.s, engine=e),
    }
    print(f"{'algo':>16} {'n':>6} {'reads':>10} {'numba s':>9} {'python s':>9} {'speedup':>8}")
    for n in args.n:
        for name, run in runs.items():
            py = timed(star(1, n, args.k).use_python_kernels(), run)
            if kernels.JIT is not None:
                sc = star(1, n, args.k)
                timed(sc, run)  # compile and warm up
                jit = timed(sc, run)
                if jit[1:] != py[1:]:
                    raise SystemExit(f"backends disagree on {name} n={n}")
                print(f"{name:>16} {n:>6} {py[1]:>10} {jit[0]:>9.4f} {py[0]:>9.4f} {py[0] / jit[0]:>8.1f}")
            else:
                print(f"{name:>16} {n:>6} {py[1]:>10} {'-':>9} {py[0]:>9.4f} {'-':>8}")


if __name__ == "__main__":
    main()
