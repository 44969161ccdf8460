"""Vertex classification, ray edge lists, windows and the constant-workspace sweep.

For a ray from q through vertex v, the edge list orders every boundary edge
the ray meets by distance from q.  A critical vertex on the ray occupies two
consecutive ranks (its two edges, or its single edge twice at a segment
end); a non-critical vertex occupies one.  With k even, a critical vertex of
first rank r <= k+1 is k-visible, and the stretch of the ray between entries
k+2 and k+3 (when both exist) is a window of the k-visibility region.
"""

from __future__ import annotations

from typing import Iterator, Optional

from .engine import BLOCK_FIRST, BLOCK_SECOND, END, HIGH_KEY, LOW_KEY, NONCRIT, START, Engine, is_block, key_cmp
from .geom import DegenerateInput, Direction, Point, ray_segment_intersect
from .memory import ENTRY_WORDS, INDEX_WORDS, WorkspaceMeter, WriteOnlySink
from .records import (
    CCW,
    CW,
    INTERIOR,
    MARK_NO_CRITICAL,
    MARK_WHOLE,
    VERTEX,
    VERTEX_DOUBLE,
    CrossingRecord,
    Marker,
    VertexClass,
    Window,
    WindowEndpoint,
)

_CLASS_NAMES = {NONCRIT: VertexClass.NONCRITICAL, END: VertexClass.END, START: VertexClass.START}

# Live state of the constant-workspace sweep: current and next vertex with
# their classes, the critical count and loop counter, the anchor rank and
# the ray's entry total, plus the anchor entry and one scratch entry.
CONST_STATE_WORDS = 8 * INDEX_WORDS + 2 * ENTRY_WORDS
# The widest pass it runs keeps two entries, i.e. a buffer of four.
C0 = CONST_STATE_WORDS + 4 * ENTRY_WORDS


def classify_vertex(scene, i: int) -> str:
    if not 0 <= i < scene.n:
        raise IndexError(i)
    cl = Engine(scene).classify(i)
    return _CLASS_NAMES[cl]


def _vertex_dir(scene, i: int) -> Direction:
    return scene.view.peek(i) - scene.q


def _on_ray(scene, d: Direction, j: int):
    P = scene.view.peek
    b = scene.nx[j]
    if b < 0:
        return None
    return ray_segment_intersect(scene.q, d, P(j), P(b))


def chain_find_edge(scene, start_edge: int, dir: Direction) -> Optional[int]:
    """Walk the chain through ``start_edge`` both ways to the edge meeting ray (q, dir).

    The walk stops at critical vertices, which end a chain.
    """
    if _on_ray(scene, dir, start_edge) is not None:
        return start_edge
    eng = Engine(scene)
    for forward in (True, False):
        e = start_edge
        for _ in range(scene.n):
            v = scene.nx[e] if forward else e
            if v < 0 or eng.classify(v) != NONCRIT:
                break
            e = v if forward else scene.pv[v]
            if e < 0 or scene.nx[e] < 0:
                break
            if _on_ray(scene, dir, e) is not None:
                return e
    return None


def _record(scene, vi, key, edge, cv) -> CrossingRecord:
    from fractions import Fraction

    t = Fraction(key[2], key[1])
    if is_block(key):
        return CrossingRecord(edge, t, VERTEX if cv == NONCRIT else VERTEX_DOUBLE)
    return CrossingRecord(edge, t, INTERIOR)


def _dir_vertex(scene, dir: Direction) -> int:
    for i in range(scene.n):
        if _vertex_dir(scene, i) == dir:
            return i
    raise DegenerateInput("sweep rays must point at a vertex")


def crossings_scan(scene, dir: Direction) -> Iterator[CrossingRecord]:
    """The edge list of the ray through the vertex ``dir`` points at, in edge order.

    A critical vertex yields one ``vertex-double`` record; rank counting gives
    it weight 2.
    """
    vi = _dir_vertex(scene, dir)
    eng = Engine(scene)
    cv = eng.classify(vi)
    for j in scene.edge_ids():
        keys = eng.edge_keys(vi, cv, j)
        if not keys:
            continue
        if is_block(keys[0]) and cv != NONCRIT and keys[0][3] == 1:
            continue  # the farther edge of a critical vertex merges into its record
        yield _record(scene, vi, keys[0], j, cv)


def rank_crossing(scene, dir: Direction, r: int, hint: Optional[CrossingRecord] = None, s: int = 1, meter=None):
    """The rank ``r`` entry of the ray's edge list, or None.

    Without a hint this is a batched k-th selection; with one, the hint's
    rank is counted and the answer reached by single steps.
    """
    if r < 1:
        raise ValueError("rank must be at least 1")
    vi = _dir_vertex(scene, dir)
    eng = Engine(scene, meter)
    cv = eng.classify(vi)
    if hint is None:
        hit = eng.kth(vi, cv, r, s)
    else:
        keys = eng.edge_keys(vi, cv, hint.edge_index)
        if not keys:
            raise ValueError("hint edge does not meet the ray")
        cur = (keys[0], hint.edge_index)
        rho, total = eng.count_below(vi, cv, cur[0])
        rho += 1
        if r > total:
            return None
        hit = _step_to(eng, vi, cv, cur, rho, r)
    return None if hit is None else _record(scene, vi, hit[0], hit[1], cv)


def _step_to(eng, vi, cv, cur, rho, target):
    while rho < target:
        cur = eng.above(vi, cv, cur[0], 1)[0]
        rho += 1
    while rho > target:
        cur = eng.below(vi, cv, cur[0], 1)[0]
        rho -= 1
    return cur


def _endpoint(scene, vi, key, edge, typ) -> WindowEndpoint:
    from fractions import Fraction

    num, den = key[2], key[1]
    return WindowEndpoint(_vertex_dir(scene, vi), edge, typ, scene.point_on_ray(vi, num, den), vi, Fraction(num, den))


def make_window(scene, vi, cv, near, far) -> Window:
    typ = CCW if cv == END else CW
    return Window(vi, _endpoint(scene, vi, near[0], near[1], typ), _endpoint(scene, vi, far[0], far[1], typ))


def emit_window(sink, w: Window) -> None:
    sink.emit(w.near)
    sink.emit(w.far)


def vertex_visible(anchor_key, anchor_rank, k) -> bool:
    """A critical vertex is k-visible iff its first entry is at or before e(k+1)."""
    return anchor_rank == k + 1 and key_cmp(BLOCK_FIRST, anchor_key) <= 0


def window_for(scene, critical_index: int, ek1: CrossingRecord, meter=None, engine: Engine | None = None):
    """The window on the ray through a k-visible critical vertex, given e(k+1), or None."""
    eng = engine or Engine(scene, meter)
    cv = eng.classify(critical_index)
    if cv == NONCRIT:
        raise ValueError("window_for needs a critical vertex")
    for key in eng.edge_keys(critical_index, cv, ek1.edge_index):
        if eng.count_below(critical_index, cv, key)[0] + 1 == eng.k + 1:
            if not vertex_visible(key, eng.k + 1, eng.k):
                return None
            return _window_above(eng, critical_index, cv, (key, ek1.edge_index))
    raise ValueError("ek1 is not the rank k+1 entry of the ray")


def _window_above(eng, vi, cv, anchor):
    nxt = eng.above(vi, cv, anchor[0], 2)
    if len(nxt) < 2:
        return None
    return make_window(eng.scene, vi, cv, nxt[0], nxt[1])


def fresh_anchor(eng, vi, cv, s: int = 1):
    """e(min(k+1, m)) on the ray through v_vi, with its rank."""
    _, m = eng.count_below(vi, cv, HIGH_KEY)
    r = min(eng.k + 1, m)
    return eng.kth(vi, cv, r, s), r


def _carry(eng, vi, cv, anchor, nv, ncv):
    """Move the anchor from ray q->v_vi to ray q->v_nv and re-rank it."""
    k = eng.k
    x = anchor
    if cv == END and is_block(x[0]):
        # the anchor's edge ends at v_vi: continue from a neighbouring entry
        up = eng.above(vi, cv, BLOCK_SECOND, 1)
        if up:
            x = up[0]
        else:
            down = eng.below(vi, cv, BLOCK_FIRST, 1)
            x = down[0] if down else None
    if x is not None:
        e = eng.chain_walk(x[1], vi, nv, ncv)
        if e >= 0:
            keys = eng.edge_keys(nv, ncv, e)
            if keys:
                cur = (keys[0], e)
                rho, m = eng.count_below(nv, ncv, cur[0])
                rho += 1
                target = min(k + 1, m)
                return _step_to(eng, nv, ncv, cur, rho, target), target
    return fresh_anchor(eng, nv, ncv)


def windows_constant(scene, meter: WorkspaceMeter | None = None, sink: WriteOnlySink | None = None, engine: Engine | None = None):
    """Report every window with O(1) words of workspace.

    Critical vertices are visited in angular order from the one of smallest
    angle; each next one is found by a selection pass over the vertices, and
    e(k+1) is carried along its chain from ray to ray, then corrected by a
    few single-entry steps.
    """
    eng = engine or Engine(scene, meter)
    sink = sink if sink is not None else WriteOnlySink()
    if scene.whole:
        sink.emit(Marker(MARK_WHOLE))
        return sink
    with eng.meter.hold(CONST_STATE_WORDS, "constant sweep state"):
        c, vi = eng.scan_critical()
        if c == 0:
            sink.emit(Marker(MARK_NO_CRITICAL))
            return sink
        cv = eng.classify(vi)
        anchor, rank = fresh_anchor(eng, vi, cv)
        for step in range(c):
            if vertex_visible(anchor[0], rank, eng.k):
                w = _window_above(eng, vi, cv, anchor)
                if w is not None:
                    emit_window(sink, w)
            if step + 1 == c:
                break
            nv = eng.vertices_after(eng.angle_key(vi), 1, True)[0]
            ncv = eng.classify(nv)
            anchor, rank = _carry(eng, vi, cv, anchor, nv, ncv)
            vi, cv = nv, ncv
    return sink
