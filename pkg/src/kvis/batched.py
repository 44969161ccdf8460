"""The O(s)-workspace window algorithms.

Both keep a candidate list ``T``: a contiguous stretch of the current ray's
edge list around e(k+1), stored as edge indices in ray order together with
the absolute rank ``base`` of its first element.  Between two consecutive
vertex rays the order of the edges crossing a ray never changes, so ``T``
only needs local edits at vertex events:

* non-critical vertex: the edge ending there is swapped for the one starting there;
* end-critical vertex: its two edges (one at a segment end) leave;
* start-critical vertex: its edges enter.

Each vertex moves e(k+1) by at most two ranks, so a rebuild with ``2s``
entries on either side of e(k+1) is enough for a batch of ``s`` vertices.

``windows_batched_all`` takes every vertex in batches of ``s``.
``windows_batched_critical`` takes only critical vertices and handles the
non-critical vertices of edges that are actually in ``T`` through an
angle-keyed heap of their ahead endpoints.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .core import emit_window, fresh_anchor, make_window
from .engine import BLOCK_FIRST, END, LOW_KEY, NONCRIT, START, Engine, key_cmp
from .memory import ENTRY_WORDS, INDEX_WORDS, WorkspaceMeter, WriteOnlySink
from .records import MARK_NO_CRITICAL, MARK_WHOLE, Arc, Marker

# Workspace bounds, peak <= c1*s + c2 words, summed from the live allocations.
# T holds at most 4s+7 rebuilt entries plus 2s inserted in one batch (30s+35).
# batch-all adds at most one vertex or ray selection buffer (10s, or 30s+50
# while rebuilding with T released) and 6 words of state: 40s+61.
# batch-crit also keeps the angle heap and its cross-links, each at most
# 6s+7 entries (60s+70), which stays charged through a rebuild: 100s+131.
BOUNDS = {"batch-all": (40, 64), "batch-crit": (100, 132)}
C1, C2 = BOUNDS["batch-crit"]


class CandidateSetExhausted(RuntimeError):
    """A needed rank fell outside the candidate list: the batch margins were violated."""


@dataclass
class CandidateEdgeSet:
    edges: list = field(default_factory=list)
    base: int = 1
    top_is_end: bool = False

    def __len__(self):
        return len(self.edges)

    @property
    def top_rank(self) -> int:
        return self.base + len(self.edges) - 1


class _Sweep:
    def __init__(self, eng: Engine, s: int, sink):
        self.eng = eng
        self.scene = eng.scene
        self.s = s
        self.k = eng.k
        self.sink = sink
        self.T = CandidateEdgeSet()
        self.charged = 0
        self.max_shift = 0

    # -- workspace for T -----------------------------------------------------------

    def _resize(self):
        want = len(self.T.edges) * ENTRY_WORDS
        self.eng.meter.charge(want - self.charged, "candidate list")
        self.charged = want

    def release(self):
        self.eng.meter.charge(-self.charged, "candidate list")
        self.charged = 0

    # -- keys on a ray ---------------------------------------------------------------

    def edge_count_at(self, v) -> int:
        sc = self.scene
        return (sc.nx[v] >= 0) + (sc.pv[v] >= 0)

    def block_len(self, v) -> int:
        """Entries of critical vertex v in a neighbouring sector's list."""
        return 1 if self.edge_count_at(v) == 1 else 2

    def incident(self, e, v) -> bool:
        return e == v or self.scene.nx[e] == v

    def tkey(self, v, cv, e):
        """Key of candidate edge ``e`` on the ray through ``v``.

        Edges incident to ``v`` sit at ray parameter 1 (a non-critical
        vertex's outgoing and incoming edges share one position).
        """
        if self.incident(e, v):
            if cv == NONCRIT:
                return BLOCK_FIRST
            return self.eng.edge_keys(v, cv, e)[0]
        keys = self.eng.edge_keys(v, cv, e)
        if not keys:
            raise CandidateSetExhausted(f"candidate edge {e} does not meet the ray through vertex {v}")
        return keys[0]

    def locate(self, v, cv, key) -> int:
        """First index of T whose key on ray v is not below ``key`` (binary search)."""
        lo, hi = 0, len(self.T.edges)
        while lo < hi:
            mid = (lo + hi) // 2
            if key_cmp(self.tkey(v, cv, self.T.edges[mid]), key) < 0:
                lo = mid + 1
            else:
                hi = mid
        return lo

    # -- rebuild ---------------------------------------------------------------------

    def rebuild(self, ref, cv, anchor):
        """Fill T from two selection passes around ``anchor`` on the ray through ``ref``,
        then move it to the sector just after that ray."""
        eng, s = self.eng, self.s
        self.release()
        with eng.meter.hold((2 * s + 2) * ENTRY_WORDS, "rebuild below"):
            below = eng.below(ref, cv, anchor[0], 2 * s + 2)
            above = eng.above(ref, cv, anchor[0], 2 * s + 4)
        rank = eng.count_below(ref, cv, anchor[0])[0] + 1
        L = below[::-1] + [anchor] + above
        base = rank - len(below)
        top_is_end = len(above) < 2 * s + 4
        removed = 0 if cv == NONCRIT else 2 - (self.edge_count_at(ref) if cv == START else 0)
        if removed:
            # drop the block entries that do not survive past the ray: both
            # at an end vertex, the repeated one at a single-edge start vertex
            drop = [BLOCK_FIRST[:3] + (1,), BLOCK_FIRST] if removed == 2 else [BLOCK_FIRST[:3] + (1,)]
            for dk in drop:
                idx = next((i for i, (kk, _) in enumerate(L) if kk == dk), None)
                if idx is not None:
                    del L[idx]
                elif key_cmp(dk, L[0][0]) < 0 if L else False:
                    base -= 1
        self.T = CandidateEdgeSet([e for _, e in L], base, top_is_end)
        self._resize()

    def anchor_edge(self):
        T = self.T
        if not T.edges:
            return None
        i = min(max(self.k + 1 - T.base, 0), len(T.edges) - 1)
        return T.edges[i]

    # -- vertex events ---------------------------------------------------------------

    def _check_cursor(self, need_window=True):
        T = self.T
        if T.base > self.k + 1 and T.base > 1:
            raise CandidateSetExhausted("rank k+1 fell below the candidate list")
        if not T.top_is_end and T.top_rank < self.k + (3 if need_window else 1):
            raise CandidateSetExhausted("rank k+3 rose above the candidate list")

    def noncritical(self, v):
        sc = self.scene
        w = sc.nx[v]
        self.eng.view.add_reads(2)
        after = sc.X[v] * sc.Y[w] - sc.Y[v] * sc.X[w] > 0
        ein, eout = (sc.pv[v], v) if after else (v, sc.pv[v])
        i = self.locate(v, NONCRIT, BLOCK_FIRST)
        if i < len(self.T.edges) and self.T.edges[i] == ein:
            self.T.edges[i] = eout
            return ein, eout
        return None

    def _block(self, v, cv):
        """Index of v's first edge in T, how many of its sector entries lie in
        T, and how many lie below T."""
        T = self.T
        blen = self.block_len(v)
        i0 = self.locate(v, cv, BLOCK_FIRST)
        inside = 0
        while i0 + inside < len(T.edges) and inside < blen and self.incident(T.edges[i0 + inside], v):
            inside += 1
        if inside == 0:
            if i0 == 0 and T.base > 1:
                return 0, 0, blen  # somewhere below T
            if i0 == len(T.edges) and not T.top_is_end:
                return i0, 0, 0  # above T
            return i0, 0, -1  # absent from a stretch that should contain it
        if inside < blen and i0 == 0 and T.base > 1 and self.eng.edge_keys(v, cv, T.edges[0])[0][3] == 1:
            return i0, inside, blen - inside  # first entry just below T
        return i0, inside, 0

    def end_vertex(self, v, cv):
        i0, inside, below = self._block(v, cv)
        if below < 0:
            raise CandidateSetExhausted(f"end vertex {v} missing from the candidate list")
        self.evaluate(v, cv, i0, inside, below)
        del self.T.edges[i0 : i0 + inside]
        self.T.base -= below
        self._resize()
        return self.scene.pv[v], v

    def start_vertex(self, v, cv):
        T = self.T
        sc = self.scene
        blen = self.edge_count_at(v)
        i0 = self.locate(v, cv, BLOCK_FIRST)
        if blen == 2:
            a, b = v, sc.pv[v]
            pair = [a, b] if self.eng.edge_keys(v, cv, a)[0][3] == 0 else [b, a]
        else:
            pair = [v if sc.nx[v] >= 0 else sc.pv[v]]
        if i0 == 0 and T.base > 1 and T.edges:
            T.base += blen
            inside, below = 0, blen
        elif i0 == len(T.edges) and not T.top_is_end:
            inside, below = 0, 0
        else:
            T.edges[i0:i0] = pair
            inside, below = blen, 0
        self._resize()
        self.evaluate(v, cv, i0, inside, below)
        return pair if inside else []

    def evaluate(self, v, cv, i0, inside, below):
        """Emit the window of critical vertex v, if any.

        The ray's own list is the sector list with v's block widened to two
        entries; ``i0``/``inside``/``below`` locate the block against T.
        """
        T, k = self.T, self.k
        blen = self.block_len(v)
        if inside == 0 and below == 0:
            return  # block above T: beyond e(k+3)
        r = T.base + i0 - below  # virtual rank of the block's first entry
        if r > k + 1:
            return
        widen = 2 - blen

        def entry(R):
            if r <= R <= r + 1:
                pos = R - r
                if blen == 2:
                    if pos < below:
                        raise CandidateSetExhausted("window endpoint below the candidate list")
                    e = T.edges[i0 + pos - below]
                    return self.eng.edge_keys(v, cv, e)[0], e
                e = T.edges[i0] if inside else None
                if e is None:
                    raise CandidateSetExhausted("window endpoint below the candidate list")
                return self.eng.edge_keys(v, cv, e)[pos], e
            if R < r:
                idx = R - T.base
            else:
                idx = R - widen - T.base
            if idx < 0:
                raise CandidateSetExhausted("window endpoint below the candidate list")
            if idx >= len(T.edges):
                if T.top_is_end:
                    return None
                raise CandidateSetExhausted("window endpoint above the candidate list")
            e = T.edges[idx]
            return self.eng.edge_keys(v, cv, e)[0], e

        near = entry(k + 2)
        far = entry(k + 3) if near is not None else None
        if near is not None and far is not None:
            emit_window(self.sink, make_window(self.scene, v, cv, near, far))


def _start(scene, s, meter, sink, engine):
    if s < 1:
        raise ValueError("s must be at least 1")
    eng = engine or Engine(scene, meter)
    sink = sink if sink is not None else WriteOnlySink()
    if scene.whole:
        sink.emit(Marker(MARK_WHOLE))
        return eng, sink, None
    c, v0 = eng.scan_critical()
    if c == 0:
        sink.emit(Marker(MARK_NO_CRITICAL))
        return eng, sink, None
    return eng, sink, (c, v0)


def _first_ray(sw: _Sweep, v0):
    eng = sw.eng
    cv = eng.classify(v0)
    anchor, rank = fresh_anchor(eng, v0, cv, sw.s)
    if rank == eng.k + 1 and key_cmp(BLOCK_FIRST, anchor[0]) <= 0:
        nxt = eng.above(v0, cv, anchor[0], 2)
        if len(nxt) == 2:
            emit_window(sw.sink, make_window(sw.scene, v0, cv, nxt[0], nxt[1]))
    sw.rebuild(v0, cv, anchor)
    return cv


def _reanchor(sw: _Sweep, ref, cv):
    e = sw.anchor_edge()
    key = sw.tkey(ref, cv, e)
    return (key, e)


def windows_batched_all(
    scene,
    s: int,
    meter: WorkspaceMeter | None = None,
    sink: WriteOnlySink | None = None,
    engine: Engine | None = None,
    trace: bool = False,
):
    """Windows with O(s) workspace, taking the vertices in angular batches of s.

    With ``trace`` the sweep runs the full turn and also emits, as
    :class:`Arc` records, the edge holding rank min(k+1, m) in every sector
    between consecutive vertex rays.  In a segment scene these arcs and the
    windows together bound the k-visibility region.
    """
    eng, sink, info = _start(scene, s, meter, sink, engine)
    if info is None:
        return sink
    c, v0 = info
    sw = _Sweep(eng, s, sink)
    tracer = _Tracer(sw) if trace else None
    with eng.meter.hold(INDEX_WORDS * 6 + (ENTRY_WORDS + 4 if trace else 0), "batch sweep state"):
        ref, rcv = v0, _first_ray(sw, v0)
        if tracer:
            tracer.open(v0, rcv)
        done = 1
        first = True
        wrapped = False
        while done < c or (tracer and not tracer.closed):
            if not first:
                sw.rebuild(ref, rcv, _reanchor(sw, ref, rcv))
            first = False
            batch = eng.vertices_after(LOW_KEY if wrapped else eng.angle_key(ref), s, False)
            if not batch:
                if tracer and not wrapped:
                    wrapped = True  # trace the rest of the turn, from angle 0 up to v0
                    continue
                break
            with eng.meter.hold(2 * INDEX_WORDS * len(batch), "vertex batch"):
                for v in batch:
                    if v == v0:
                        tracer.finish(v0)
                        break
                    cv = eng.classify(v)
                    if cv == NONCRIT:
                        sw.noncritical(v)
                    elif cv == END:
                        sw.end_vertex(v, cv)
                        done += 1
                    else:
                        sw.start_vertex(v, cv)
                        done += 1
                    if tracer:
                        sw._check_cursor(need_window=False)
                        tracer.step(v, cv)
                    elif done < c:
                        sw._check_cursor()
                    ref, rcv = v, cv
                    if done == c and not tracer:
                        break
    sw.release()
    return sink


class _Tracer:
    """Follows the rank min(k+1, m) edge from sector to sector."""

    def __init__(self, sw: _Sweep):
        self.sw = sw
        self.edge = None
        self.start = None
        self.closed = False

    def current(self):
        T, k = self.sw.T, self.sw.k
        i = len(T.edges) - 1 if (T.top_is_end and T.top_rank < k + 1) else k + 1 - T.base
        return T.edges[i]

    def _point(self, v, cv, e):
        sc = self.sw.scene
        if self.sw.incident(e, v):
            return sc.view.peek(v)
        key = self.sw.eng.edge_keys(v, cv, e)[0]
        return sc.point_on_ray(v, key[2], key[1])

    def open(self, v, cv):
        self.edge = self.current()
        self.start = self._point(v, cv, self.edge)

    def step(self, v, cv):
        e = self.current()
        if e != self.edge:
            self.sw.sink.emit(Arc(self.edge, self.start, self._point(v, cv, self.edge)))
            self.edge = e
            self.start = self._point(v, cv, e)

    def finish(self, v0):
        cv = self.sw.eng.classify(v0)
        self.sw.sink.emit(Arc(self.edge, self.start, self._point(v0, cv, self.edge)))
        self.closed = True


class _AngleKey:
    """Heap key: sweep angle of an edge's ahead endpoint, wrapped entries last."""

    __slots__ = ("wrap", "key", "edge", "token")

    def __init__(self, wrap, key, edge, token):
        self.wrap, self.key, self.edge, self.token = wrap, key, edge, token

    def __lt__(self, other):
        if self.wrap != other.wrap:
            return self.wrap < other.wrap
        c = key_cmp(self.key, other.key)
        if c:
            return c < 0
        return self.token < other.token


class _AngleEvents:
    """T_theta: one heap entry per candidate edge, invalidated lazily through
    the edge -> token cross-link."""

    def __init__(self, sw: _Sweep):
        self.sw = sw
        self.eng = sw.eng
        self.heap = []
        self.link = {}
        self.counter = 0

    def words(self):
        return (len(self.heap) + len(self.link)) * ENTRY_WORDS

    def ahead(self, e):
        sc = self.sw.scene
        a, b = e, sc.nx[e]
        self.eng.view.add_reads(2)
        return b if sc.X[a] * sc.Y[b] - sc.Y[a] * sc.X[b] > 0 else a

    def push(self, e, now):
        """Schedule edge ``e``; ``now`` is the angle key of the current ray.

        The ahead endpoint is less than half a turn ahead, so a natural
        angle below the current one means it lies past the end of the sweep.
        """
        w = self.ahead(e)
        key = self.eng.angle_key(w)
        wrap = 1 if key_cmp(key, now) < 0 else 0
        self.counter += 1
        self.link[e] = self.counter
        heapq.heappush(self.heap, _AngleKey(wrap, key, e, self.counter))

    def drop(self, e):
        self.link.pop(e, None)

    def reset(self, edges, now):
        self.heap.clear()
        self.link.clear()
        for e in edges:
            self.push(e, now)

    def drain_before(self, key):
        """Pop ahead endpoints strictly before angle ``key``; swap each live,
        non-critical one for the next edge of its chain."""
        sw = self.sw
        while self.heap:
            top = self.heap[0]
            if top.wrap or key_cmp(top.key, key) >= 0:
                return
            heapq.heappop(self.heap)
            if self.link.get(top.edge) != top.token:
                continue
            del self.link[top.edge]
            w = self.ahead(top.edge)
            if self.eng.classify(w) != NONCRIT:
                continue  # the critical event at w handles this edge
            swapped = sw.noncritical(w)
            if swapped is None:
                raise CandidateSetExhausted(f"edge {top.edge} vanished from the candidate list")
            self.push(swapped[1], top.key)


def windows_batched_critical(scene, s: int, meter: WorkspaceMeter | None = None, sink: WriteOnlySink | None = None, engine: Engine | None = None):
    """Windows with O(s) workspace, taking only critical vertices in batches of s."""
    eng, sink, info = _start(scene, s, meter, sink, engine)
    if info is None:
        return sink
    c, v0 = info
    sw = _Sweep(eng, s, sink)
    held = 0
    with eng.meter.hold(INDEX_WORDS * 6, "batch sweep state"):
        ref, rcv = v0, _first_ray(sw, v0)
        events = _AngleEvents(sw)
        done = 1
        first = True
        try:
            while done < c:
                if not first:
                    sw.rebuild(ref, rcv, _reanchor(sw, ref, rcv))
                first = False
                events.reset(sw.T.edges, eng.angle_key(ref))
                held = _recharge(eng, held, events.words())
                batch = eng.vertices_after(eng.angle_key(ref), s, True)
                if not batch:
                    break
                with eng.meter.hold(2 * INDEX_WORDS * len(batch), "vertex batch"):
                    for v in batch:
                        events.drain_before(eng.angle_key(v))
                        cv = eng.classify(v)
                        if cv == END:
                            for e in (sw.scene.pv[v], v):
                                if e >= 0 and sw.scene.nx[e] >= 0:
                                    events.drop(e)
                            sw.end_vertex(v, cv)
                        else:
                            for e in sw.start_vertex(v, cv):
                                events.push(e, eng.angle_key(v))
                        done += 1
                        held = _recharge(eng, held, events.words())
                        if done < c:
                            sw._check_cursor()
                        ref, rcv = v, cv
                        if done == c:
                            break
        finally:
            eng.meter.charge(-held, "angle events")
    sw.release()
    return sink


def _recharge(eng, held, want):
    eng.meter.charge(want - held, "angle events")
    return want
