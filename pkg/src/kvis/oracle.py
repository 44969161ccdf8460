"""Full-memory reference answers.

Nothing here uses the sweep kernels: every ray is intersected with every
edge in exact rational arithmetic through :mod:`kvis.geom`, and the entry
lists are sorted outright.  The main algorithms are tested against this.
"""

from __future__ import annotations

from fractions import Fraction

from .geom import DegenerateInput, Direction, Hit, Point, on_segment, orient, ray_segment_intersect, segments_cross_properly
from .records import CCW, CW, VERTEX, VERTEX_DOUBLE, INTERIOR, CrossingRecord, VertexClass, Window, WindowEndpoint
from .scene import SEGMENTS

K_VISIBLE = "k-visible"
NOT_K_VISIBLE = "not-k-visible"
DEGENERATE = "degenerate"


def _pts(scene):
    return scene.view.peek


def vertex_class(scene, i: int) -> str:
    P = _pts(scene)
    v = P(i)
    sides = []
    for w in (scene.nx[i], scene.pv[i]):
        if w >= 0:
            o = orient(scene.q, v, P(w))
            if o == 0:
                raise DegenerateInput(f"neighbour {w} of vertex {i} is collinear with q")
            sides.append(o)
    if all(o < 0 for o in sides):
        return VertexClass.END
    if all(o > 0 for o in sides):
        return VertexClass.START
    return VertexClass.NONCRITICAL


def sorted_crossings(scene, i: int) -> list:
    """The complete edge list of the ray q -> v_i, sorted, with tie order.

    Returns ``(t, tiebreak, CrossingRecord)`` triples; a critical vertex
    contributes two consecutive triples.
    """
    P = _pts(scene)
    q, v = scene.q, P(i)
    d = v - q
    cls = vertex_class(scene, i)
    out = []
    incident = []
    for j in range(scene.n):
        b = scene.nx[j]
        if b < 0:
            continue
        if j == i or b == i:
            incident.append(j)
            continue
        hit = ray_segment_intersect(q, d, P(j), P(b))
        if hit is None:
            continue
        if hit.kind != Hit.INTERIOR:
            raise DegenerateInput(f"ray to vertex {i} passes through another vertex")
        out.append((hit.t, 0, CrossingRecord(j, hit.t, INTERIOR)))
    one = Fraction(1)
    if cls == VertexClass.NONCRITICAL:
        # count once, on the edge that continues past the ray
        for j in incident:
            w = scene.nx[j] if j == i else j
            if orient(q, v, P(w)) > 0:
                out.append((one, 0, CrossingRecord(j, one, VERTEX)))
    elif len(incident) == 1:
        j = incident[0]
        out.append((one, 0, CrossingRecord(j, one, VERTEX_DOUBLE)))
        out.append((one, 1, CrossingRecord(j, one, VERTEX_DOUBLE)))
    else:
        ea, eb = incident
        a = scene.nx[ea] if ea == i else ea
        b = scene.nx[eb] if eb == i else eb
        o = orient(v, P(a), P(b))
        if o == 0:
            raise DegenerateInput(f"edges at vertex {i} are collinear")
        a_first = o > 0 if cls == VertexClass.END else o < 0
        first, second = (ea, eb) if a_first else (eb, ea)
        out.append((one, 0, CrossingRecord(first, one, VERTEX_DOUBLE)))
        out.append((one, 1, CrossingRecord(second, one, VERTEX_DOUBLE)))
    out.sort(key=lambda e: (e[0], e[1]))
    for x, y in zip(out, out[1:]):
        if x[0] == y[0] and x[1] == y[1]:
            raise DegenerateInput(f"tied crossings on the ray to vertex {i}")
    return out


def _endpoint(scene, i, d, rec, typ) -> WindowEndpoint:
    q = scene.q
    p = Point(q.x + rec.t * d.dx, q.y + rec.t * d.dy)
    return WindowEndpoint(d, rec.edge_index, typ, p, i, rec.t)


def oracle_windows(scene) -> list:
    """Every window, in vertex index order."""
    if scene.whole:
        return []
    k = scene.k
    out = []
    for i in range(scene.n):
        cls = vertex_class(scene, i)
        if cls == VertexClass.NONCRITICAL:
            continue
        entries = sorted_crossings(scene, i)
        r = next(idx for idx, e in enumerate(entries) if e[2].kind == VERTEX_DOUBLE and e[2].t == 1) + 1
        if r > k + 1 or len(entries) < k + 3:
            continue
        d = _pts(scene)(i) - scene.q
        typ = CCW if cls == VertexClass.END else CW
        near = _endpoint(scene, i, d, entries[k + 1][2], typ)
        far = _endpoint(scene, i, d, entries[k + 2][2], typ)
        out.append(Window(i, near, far))
    return out


def oracle_window_set(scene) -> frozenset:
    return frozenset(w.key() for w in oracle_windows(scene))


# -- point classification -------------------------------------------------------


def crossing_count(scene, p: Point):
    """Proper crossings of the open segment q-p with the boundary, or None if it grazes."""
    P = _pts(scene)
    q = scene.q
    count = 0
    for j in range(scene.n):
        b = scene.nx[j]
        if b < 0:
            continue
        a_pt, b_pt = P(j), P(b)
        if on_segment(a_pt, q, p) or on_segment(b_pt, q, p) or on_segment(p, a_pt, b_pt):
            return None
        if segments_cross_properly(q, p, a_pt, b_pt):
            count += 1
    return count


def _inside_box(scene, p: Point):
    x0, y0, x1, y1 = scene.box
    if x0 < p.x < x1 and y0 < p.y < y1:
        return True
    if p.x < x0 or p.x > x1 or p.y < y0 or p.y > y1:
        return False
    return None


def _verdict(scene, count, inside_box=True):
    if count is None or inside_box is None:
        return DEGENERATE
    if scene.kind == SEGMENTS:
        return K_VISIBLE if inside_box and count <= scene.k else NOT_K_VISIBLE
    return K_VISIBLE if count % 2 == 0 and count <= scene.k else NOT_K_VISIBLE


def classify_point(scene, p) -> str:
    """Exact k-visibility of ``p`` by counting proper crossings of segment q-p.

    In a closed boundary an odd count means p lies outside the domain.
    """
    p = p if isinstance(p, Point) else Point(*p)
    if p == scene.q:
        raise ValueError("p must differ from q")
    inside = _inside_box(scene, p) if scene.kind == SEGMENTS else True
    if scene.whole and inside and scene.kind == SEGMENTS:
        count = crossing_count(scene, p)
        return DEGENERATE if count is None else K_VISIBLE
    return _verdict(scene, crossing_count(scene, p), inside)


def classify_frame_point(scene, fx: int, fy: int) -> str:
    """Same verdict for an integer point of the scene frame, via the int kernel."""
    from . import kernels

    be = scene.backend()
    if be.compiled and max(abs(fx), abs(fy)) <= 2 * kernels.INT64_COORD_LIMIT:
        c = int(be.mod.segment_crossings(be.X, be.Y, be.NX, fx, fy))
    else:
        c = int(kernels.PY.segment_crossings(scene.X, scene.Y, scene.nx, fx, fy))
    count = None if c < 0 else c
    inside = True
    if scene.kind == SEGMENTS:
        L = scene.scale
        p = Point(scene.q.x + Fraction(fx, L), scene.q.y + Fraction(fy, L))
        inside = _inside_box(scene, p)
        if scene.whole and inside and count is not None:
            return K_VISIBLE
    return _verdict(scene, count, inside)


def point_in_closed_component(scene, ci: int, p: Point) -> bool:
    """Even-odd test of ``p`` against closed component ``ci`` (p off its boundary)."""
    comp = scene.components[ci]
    P = _pts(scene)
    inside = False
    for j in range(comp.start, comp.start + comp.length):
        a, b = P(j), P(scene.nx[j])
        if on_segment(p, a, b):
            raise DegenerateInput("point lies on the boundary")
        if (a.y > p.y) != (b.y > p.y):
            x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if x > p.x:
                inside = not inside
    return inside


# -- segment visible parts --------------------------------------------------------


def oracle_segment_parts(scene) -> dict:
    """Visible sub-segments per segment component, as merged exact intervals.

    Each segment is cut where rays through vertices cross it; between cuts
    visibility is constant, so the midpoint of each piece decides it.
    Returns ``{edge: [(u0, u1), ...]}`` with parameters along the edge.
    """
    P = _pts(scene)
    q = scene.q
    out = {}
    for ci, comp in enumerate(scene.components):
        if comp.role != "segment":
            continue
        j = comp.start
        a, b = P(j), P(j + 1)
        cuts = {Fraction(0), Fraction(1)}
        for i in range(scene.n):
            if i in (j, j + 1):
                continue
            d = P(i) - q
            e = b - a
            den = d.dx * e.dy - d.dy * e.dx
            if den == 0:
                continue
            ax, ay = a.x - q.x, a.y - q.y
            u = Fraction(ax * d.dy - ay * d.dx) / den
            t = Fraction(ax * e.dy - ay * e.dx) / den
            if 0 < u < 1 and t > 0:
                cuts.add(u)
        cuts = sorted(cuts)
        pieces = []
        for u0, u1 in zip(cuts, cuts[1:]):
            um = (u0 + u1) / 2
            m = Point(a.x + um * (b.x - a.x), a.y + um * (b.y - a.y))
            # crossings strictly before m, not counting the segment itself
            count = 0
            for jj in range(scene.n):
                bb = scene.nx[jj]
                if bb < 0 or jj == j:
                    continue
                if segments_cross_properly(q, m, P(jj), P(bb)):
                    count += 1
            if count <= scene.k:
                if pieces and pieces[-1][1] == u0:
                    pieces[-1] = (pieces[-1][0], u1)
                else:
                    pieces.append((u0, u1))
        out[j] = pieces
    return out
from .generate import random_scene  # noqa: E402,F401  (generators live in kvis.generate)
