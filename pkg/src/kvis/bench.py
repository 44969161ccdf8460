"""Trade-off tables: counted reads and peak workspace over a parameter grid."""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .boundary import algorithm_handle
from .engine import Engine
from .generate import PROFILES, random_scene
from .memory import WorkspaceMeter, WriteOnlySink

HEADER = ("algo", "n", "k", "s", "c", "reads", "peak_words", "emitted", "wall_ns")
ALGOS = ("const", "batch-all", "batch-crit")


@dataclass(frozen=True)
class Grid:
    n: tuple = (256,)
    s: tuple = (1, 4, 16)
    k: tuple = (0,)
    profile: str = "star"
    reps: int = 1


def parse_grid(tokens) -> Grid:
    """``n=256,1024 s=1,4 k=0,2 profile=star reps=2``."""
    vals = {}
    for tok in tokens:
        key, sep, val = tok.partition("=")
        if not sep:
            raise ValueError(f"grid entries look like key=value, got {tok!r}")
        if key in ("n", "s", "k"):
            vals[key] = tuple(int(v) for v in val.split(","))
        elif key == "reps":
            vals[key] = int(val)
        elif key == "profile":
            if val not in PROFILES:
                raise ValueError(f"unknown profile {val!r}")
            vals[key] = val
        else:
            raise ValueError(f"unknown grid key {key!r}")
    return Grid(**vals)


def cells(grid: Grid, algos=ALGOS, seed: int = 0):
    """Grid cells in output order; const ignores s and runs once per (n, k)."""
    out = []
    for n in grid.n:
        for k in grid.k:
            for algo in algos:
                for s in (1,) if algo == "const" else grid.s:
                    for _ in range(grid.reps):
                        out.append((grid.profile, n, k, algo, s, seed))
    return out


def run_cell(cell, timing: bool = False) -> tuple:
    profile, n, k, algo, s, seed = cell
    scene = random_scene(seed, n, profile, k)
    meter = WorkspaceMeter()
    eng = Engine(scene, meter)
    sink = WriteOnlySink()
    t0 = time.perf_counter_ns()
    algorithm_handle(algo, s)(scene, sink, eng)
    wall = time.perf_counter_ns() - t0
    c = Engine(scene).scan_critical()[0]
    return (algo, scene.n, k, s, c, eng.view.reads, meter.peak_words, sink.count, wall if timing else "")


def _run_untimed(cell):
    return run_cell(cell, False)


def bench(grid: Grid, algos=ALGOS, seed: int = 0, timing: bool = False, jobs: int = 1) -> str:
    """CSV for every cell.  Rows keep grid order whatever the job count."""
    todo = cells(grid, algos, seed)
    if jobs > 1 and not timing:
        with ProcessPoolExecutor(jobs) as ex:
            rows = list(ex.map(_run_untimed, todo))
    else:
        rows = [run_cell(c, timing) for c in todo]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    w.writerows(rows)
    return buf.getvalue()
