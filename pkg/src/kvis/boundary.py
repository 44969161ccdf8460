"""Boundary reconstruction from windows.

The output sink is write-only, so the window set cannot be read back.
Instead every step of the walk re-runs the window algorithm into a small
scanning sink that keeps only what the step needs: the next window endpoint
along the current boundary component, and the partner of the current one.
The walk therefore costs one window run per endpoint and no workspace
beyond the window algorithm's own.

Visibility of the boundary only changes at window endpoints.  Leaving an
endpoint w forward along its edge is k-visible iff that direction points to
the k-visible side of the window's ray: the counterclockwise side for a CCW
window, the clockwise side for a CW one.  Otherwise the region boundary
leaves w along the window chord.
"""

from __future__ import annotations

from fractions import Fraction

from .core import windows_constant
from .engine import BLOCK_FIRST, Engine
from .memory import INDEX_WORDS, KEY_WORDS, POINT_WORDS, WorkspaceMeter, WriteOnlySink
from .records import CCW, MARK_NO_CRITICAL, MARK_WHOLE, Arc, Chord, Marker, Window, WindowEndpoint

# Walk state: current, next and partner endpoint keys and points, the first
# endpoint's key and a few indices.
WALK_WORDS = 4 * KEY_WORDS + 3 * POINT_WORDS + 4 * INDEX_WORDS


def algorithm_handle(name: str, s: int = 1):
    """A callable ``f(scene, sink, engine)`` running the named window algorithm."""
    from .batched import windows_batched_all, windows_batched_critical

    if name == "const":
        return lambda scene, sink, engine: windows_constant(scene, sink=sink, engine=engine)
    if name == "batch-all":
        return lambda scene, sink, engine: windows_batched_all(scene, s, sink=sink, engine=engine)
    if name in ("batch-crit", "batch-critical"):
        return lambda scene, sink, engine: windows_batched_critical(scene, s, sink=sink, engine=engine)
    if name == "oracle":
        return _oracle_run
    raise ValueError(f"unknown window algorithm {name!r}")


def _oracle_run(scene, sink, engine):
    """Full-memory windows; uncounted, for comparison runs only."""
    from .oracle import oracle_windows

    if scene.whole:
        sink.emit(Marker(MARK_WHOLE))
        return
    ws = oracle_windows(scene)
    if not ws and scene.critical_count() == 0:
        sink.emit(Marker(MARK_NO_CRITICAL))
    ws.sort(key=lambda w: w.source_vertex)
    for w in ws:
        sink.emit(w.near)
        sink.emit(w.far)


def edge_param(scene, j: int, p) -> Fraction:
    a = scene.view.peek(j)
    b = scene.view.peek(scene.nx[j])
    if b.x != a.x:
        return (p.x - a.x) / (b.x - a.x)
    return (p.y - a.y) / (b.y - a.y)


def endpoint_key(scene, w: WindowEndpoint):
    """Position of an endpoint along its component: (edge offset, parameter)."""
    comp = scene.components[scene.comp_of[w.edge_index]]
    return (w.edge_index - comp.start, edge_param(scene, w.edge_index, w.point))


def forward_visible(scene, w: WindowEndpoint) -> bool:
    j = w.edge_index
    a = scene.view.peek(j)
    b = scene.view.peek(scene.nx[j])
    turn = w.dir.dx * (b.y - a.y) - w.dir.dy * (b.x - a.x)
    return (w.type == CCW) == (turn > 0)


class _Scan:
    """Sink that keeps the first endpoint after ``after`` on ``comp`` (cyclically
    falling back to the first one overall) and the partner of ``target``."""

    def __init__(self, scene, comp: int, after=None, target=None, cyclic=True, far_only=False):
        self.scene = scene
        self.far_only = far_only
        self.comp = comp
        self.after = after
        self.target = target
        self.cyclic = cyclic
        self.best = None
        self.lowest = None
        self.partner = None
        self.markers = []
        self._pending = None
        self.count = 0

    def emit(self, record):
        self.count += 1
        if isinstance(record, Marker):
            self.markers.append(record.kind)
            return
        if not isinstance(record, WindowEndpoint):
            return
        if self._pending is None:
            self._pending = record
            return
        pair = (self._pending, record)
        self._pending = None
        for w, other in (pair[::-1], pair)[: 1 if self.far_only else 2]:
            if self.scene.comp_of[w.edge_index] != self.comp:
                continue
            key = endpoint_key(self.scene, w)
            if self.target is not None and key == self.target:
                self.partner = other
            if self.lowest is None or key < self.lowest[0]:
                self.lowest = (key, w)
            if (self.after is None or key > self.after) and (self.best is None or key < self.best[0]):
                self.best = (key, w)

    def result(self):
        if self.best is not None:
            return self.best
        return self.lowest if self.cyclic else None


def _run(scene, algo, eng, comp, after=None, target=None, cyclic=True, far_only=False) -> _Scan:
    scan = _Scan(scene, comp, after, target, cyclic, far_only)
    algo(scene, scan, eng)
    return scan


def vertex_visible_from_q(eng: Engine, v: int) -> bool:
    """A boundary vertex is in the closed region iff at most k crossings precede it."""
    cv = eng.classify(v)
    return eng.count_below(v, cv, BLOCK_FIRST)[0] <= eng.k


def _emit_arcs(scene, sink, ka, pa, kb, pb, comp):
    """Arcs along ``comp`` from position ``ka`` (point ``pa``) forward to ``kb``."""
    P = scene.view.peek
    start = comp.start
    m = comp.length
    ja, jb = ka[0], kb[0]
    if ja == jb and ka[1] < kb[1]:
        sink.emit(Arc(start + ja, pa, pb))
        return
    j = ja
    cur = pa
    steps = 0
    while True:
        e = start + j
        end = P(scene.nx[e])
        if j == jb and steps > 0:
            if cur != pb:
                sink.emit(Arc(e, cur, pb))
            return
        if cur != end:
            sink.emit(Arc(e, cur, end))
        cur = end
        j = (j + 1) % m
        steps += 1
        if not comp.closed and j == 0:
            return


def emit_whole_component(scene, sink, comp):
    P = scene.view.peek
    for e in range(comp.start, comp.start + comp.length):
        if scene.nx[e] >= 0:
            sink.emit(Arc(e, P(e), P(scene.nx[e])))


def _chord(cur: WindowEndpoint, partner: WindowEndpoint) -> Chord:
    near, far = (cur, partner) if cur.t < partner.t else (partner, cur)
    return Chord(Window(cur.source_vertex, near, far), cur.point, partner.point)


def walk_closed_component(scene, algo, eng, sink, ci: int) -> None:
    comp = scene.components[ci]
    first = _run(scene, algo, eng, ci).result()
    if first is None:
        if vertex_visible_from_q(eng, comp.start):
            emit_whole_component(scene, sink, comp)
        return
    k0, w0 = first
    kc, cur = k0, w0
    for _ in range(4 * scene.n + 4):
        scan = _run(scene, algo, eng, ci, after=kc, target=kc)
        kn, nxt = scan.result()
        if forward_visible(scene, cur):
            _emit_arcs(scene, sink, kc, cur.point, kn, nxt.point, comp)
        else:
            if scan.partner is None:
                raise RuntimeError("window endpoint without a partner")
            sink.emit(_chord(cur, scan.partner))
        kc, cur = kn, nxt
        if kc == k0:
            return
    raise RuntimeError("boundary walk did not close")


def walk_open_component(scene, algo, eng, sink, ci: int) -> None:
    """Visible pieces of an open chain (a segment), split at window endpoints.

    Next to a segment end the crossing count differs by one across the ray,
    not two, so the near endpoint of a window leaves its edge visible on both
    sides; only far endpoints split a segment.
    """
    comp = scene.components[ci]
    P = scene.view.peek
    kc, pc = (0, Fraction(0)), P(comp.start)
    visible = vertex_visible_from_q(eng, comp.start)
    last = (comp.length - 2, Fraction(1))
    pend = P(comp.start + comp.length - 1)
    for _ in range(4 * scene.n + 4):
        res = _run(scene, algo, eng, ci, after=kc, cyclic=False, far_only=True).result() if kc != last else None
        kn, pn, w = (res[0], res[1].point, res[1]) if res is not None else (last, pend, None)
        if visible and (kn != kc):
            _emit_arcs(scene, sink, kc, pc, kn, pn, comp)
        if w is None:
            return
        kc, pc = kn, pn
        visible = forward_visible(scene, w)
    raise RuntimeError("segment walk did not terminate")


def report_boundary(scene, windows_algo=None, meter: WorkspaceMeter | None = None, sink: WriteOnlySink | None = None, engine: Engine | None = None):
    """Emit the boundary of the k-visibility region as arcs and chords.

    Components are walked one after another, each in boundary order from its
    first window endpoint; a component without windows is either emitted
    whole or skipped after a single visibility test of one vertex.
    """
    algo = windows_algo or algorithm_handle("const")
    eng = engine or Engine(scene, meter)
    sink = sink if sink is not None else WriteOnlySink()
    if scene.whole:
        sink.emit(Marker(MARK_WHOLE))
        for comp in scene.components:
            emit_whole_component(scene, sink, comp)
        return sink
    with eng.meter.hold(WALK_WORDS, "boundary walk"):
        probe = _run(scene, algo, eng, 0)
        if MARK_NO_CRITICAL in probe.markers:
            sink.emit(Marker(MARK_NO_CRITICAL))
        for ci, comp in enumerate(scene.components):
            if comp.closed:
                walk_closed_component(scene, algo, eng, sink, ci)
            else:
                walk_open_component(scene, algo, eng, sink, ci)
    return sink


def report_boundary_with(scene, name: str, s: int = 1, meter=None, sink=None, engine=None):
    return report_boundary(scene, algorithm_handle(name, s), meter, sink, engine)


# -- membership in the region bounded by reported pieces --------------------------


def piece_segments(records) -> list:
    """Exact endpoint pairs of every arc and chord in a piece stream."""
    out = []
    for r in records:
        if isinstance(r, Arc):
            out.append((r.start, r.end))
        elif isinstance(r, Chord):
            out.append((r.start, r.end))
    return out


def closed_loops(records) -> bool:
    """True when every piece endpoint is shared by an even number of pieces."""
    from collections import Counter

    deg = Counter()
    for a, b in piece_segments(records):
        if a == b:
            continue
        deg[a] += 1
        deg[b] += 1
    return all(v % 2 == 0 for v in deg.values())


class RegionTester:
    """Even-odd membership of points in the region bounded by a piece stream.

    Points are tested with a horizontal ray in float64; any edge whose crossing
    lies within a tolerance of the point is re-done exactly in rationals.
    """

    def __init__(self, records, whole_domain=None):
        import numpy as np

        segs = piece_segments(records)
        self.exact = segs
        self.whole = whole_domain
        if segs:
            arr = np.array([[float(a.x), float(a.y), float(b.x), float(b.y)] for a, b in segs])
        else:
            arr = np.zeros((0, 4))
        self.ax, self.ay, self.bx, self.by = arr.T
        self.np = np

    def contains(self, px, py) -> bool:
        """``px``, ``py`` are Fractions (exact inputs)."""
        np = self.np
        fx, fy = float(px), float(py)
        ay, by = self.ay, self.by
        straddle = (ay > fy) != (by > fy)
        if not straddle.any():
            return False
        idx = np.nonzero(straddle)[0]
        ax, bx = self.ax[idx], self.bx[idx]
        ayy, byy = ay[idx], by[idx]
        xs = ax + (fy - ayy) * (bx - ax) / (byy - ayy)
        scale = max(1.0, abs(fx))
        close = np.abs(xs - fx) <= 1e-9 * scale + 1e-9
        near_y = (np.abs(ayy - fy) <= 1e-9 * max(1.0, abs(fy))) | (np.abs(byy - fy) <= 1e-9 * max(1.0, abs(fy)))
        if close.any() or near_y.any():
            return self._exact(px, py)
        return int((xs > fx).sum()) % 2 == 1

    def _exact(self, px, py) -> bool:
        inside = False
        for a, b in self.exact:
            if (a.y > py) != (b.y > py):
                x = a.x + (py - a.y) * (b.x - a.x) / (b.y - a.y)
                if x > px:
                    inside = not inside
        return inside
