"""``kvis run`` and ``kvis bench``.

Exit codes: 0 success, 2 invalid or degenerate scene, 3 workspace budget
exceeded under ``--strict``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import fixtures
from .batched import BOUNDS
from .bench import ALGOS, bench, parse_grid
from .boundary import WALK_WORDS, algorithm_handle, report_boundary
from .core import C0
from .engine import Engine
from .generate import PROFILES, GenerationFailure, random_scene
from .geom import DegenerateInput
from .io import SceneParseError, format_result, load_scene
from .memory import BudgetExceeded, WorkspaceMeter, WriteOnlySink
from .records import Marker, WindowEndpoint
from .scene import SEGMENTS
from .svg import render_svg
from .variants import region_boundary_segments, visible_parts_segments

EXIT_OK, EXIT_SCENE, EXIT_BUDGET = 0, 2, 3


def resolve_scene_path(arg: str) -> Path:
    """A file path, the same with ``.scene`` added, or a shipped fixture name."""
    p = Path(arg)
    for cand in (p, p.with_name(p.name + ".scene")):
        if cand.is_file():
            return cand
    if p.name in fixtures.NAMES:
        return fixtures.path(p.name)
    raise FileNotFoundError(f"no scene file {arg!r}")


def default_budget(algo: str, s: int, report: str):
    if algo == "oracle":
        return None
    if algo == "const":
        base = C0
    else:
        c1, c2 = BOUNDS[algo]
        base = c1 * s + c2
    return base + (WALK_WORDS if report != "windows" else 0)


def _scene_from_args(args):
    if args.gen:
        profile, _, n = args.gen.partition(",")
        if profile not in PROFILES or not n.isdigit():
            raise ValueError(f"--gen wants <profile>,<n> with profile in {', '.join(PROFILES)}")
        return random_scene(args.seed, int(n), profile, args.k or 0)
    if not args.scene:
        raise ValueError("give --scene or --gen")
    scene = load_scene(resolve_scene_path(args.scene))
    if args.k is not None:
        raise ValueError("--k only applies to generated scenes; the scene file sets k")
    return scene


def cmd_run(args) -> int:
    try:
        scene = _scene_from_args(args)
    except (SceneParseError, DegenerateInput, GenerationFailure, FileNotFoundError, ValueError) as exc:
        print(f"kvis: {exc}", file=sys.stderr)
        return EXIT_SCENE
    s = args.workspace
    budget = args.budget if args.budget is not None else default_budget(args.algo, s, args.report)
    meter = WorkspaceMeter(budget, strict=args.strict)
    eng = Engine(scene, meter)
    sink = WriteOnlySink()
    run = algorithm_handle(args.algo, s)
    try:
        run(scene, sink, eng)
        if args.report == "boundary":
            if scene.kind == SEGMENTS:
                region_boundary_segments(scene, s, sink=_Without(sink), engine=eng)
            else:
                report_boundary(scene, run, sink=_Without(sink), engine=eng)
        elif args.report == "parts":
            if scene.kind != SEGMENTS:
                raise ValueError("--report parts applies to segment scenes")
            visible_parts_segments(scene, args.algo, s, sink=_Without(sink), engine=eng)
    except BudgetExceeded as exc:
        print(f"kvis: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DegenerateInput, ValueError) as exc:
        print(f"kvis: {exc}", file=sys.stderr)
        return EXIT_SCENE
    records = sink.records()
    sys.stdout.write(format_result(records, eng.view.reads, meter.peak_words))
    if args.svg:
        Path(args.svg).write_text(render_svg(records, scene), encoding="utf-8")
    return EXIT_OK


class _Without:
    """Forward boundary pieces only; the windows were already written."""

    def __init__(self, out):
        self.out = out

    def emit(self, record):
        if not isinstance(record, (WindowEndpoint, Marker)):
            self.out.emit(record)


def cmd_bench(args) -> int:
    try:
        grid = parse_grid(args.grid)
        algos = tuple(args.algo.split(",")) if args.algo else ALGOS
        for a in algos:
            algorithm_handle(a)
    except ValueError as exc:
        print(f"kvis: {exc}", file=sys.stderr)
        return EXIT_SCENE
    text = bench(grid, algos, args.seed, args.timing, args.jobs)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kvis", description="k-visibility with bounded workspace")
    sub = ap.add_subparsers(dest="cmd", required=True)
    r = sub.add_parser("run", help="windows or region boundary of one scene")
    r.add_argument("--algo", choices=("const", "batch-all", "batch-crit", "oracle"), default="const")
    r.add_argument("--workspace", type=int, default=1, metavar="S")
    r.add_argument("--report", choices=("windows", "boundary", "parts"), default="windows")
    r.add_argument("--scene")
    r.add_argument("--gen", metavar="PROFILE,N")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--k", type=int)
    r.add_argument("--svg")
    r.add_argument("--strict", action="store_true", help="fail when the workspace budget is exceeded")
    r.add_argument("--budget", type=int, metavar="WORDS", help="override the default budget")
    r.set_defaults(func=cmd_run)
    b = sub.add_parser("bench", help="reads and peak workspace over a grid")
    b.add_argument("--grid", nargs="+", default=[], metavar="KEY=VALUES")
    b.add_argument("--algo", help="comma list, default const,batch-all,batch-crit")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--timing", action="store_true", help="fill the wall_ns column")
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "workspace", 1) < 1:
        print("kvis: --workspace must be at least 1", file=sys.stderr)
        return EXIT_SCENE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
