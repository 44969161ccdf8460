"""Problem instances: a read-only boundary store, a query point and k.

Every scene kind is stored the same way: a flat vertex array, a successor
and predecessor index per vertex (-1 at a segment end) and a component id.
Edge ``j`` is ``(v_j, v_next(j))``.  Polygons are one CCW component; polygons
with holes add CW hole components; segment scenes are the CCW bounding box
followed by one two-vertex component per segment.

The kernels work in an integer frame: coordinates are multiplied by the
least common denominator and translated so that the query point is the
origin.  Similarity transforms preserve every predicate and ray parameter.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import kernels
from .geom import DegenerateInput, Point
from .memory import ReadOnlyView

POLYGON = "polygon"
HOLES = "holes"
SEGMENTS = "segments"


def _lcm_denominators(values: Iterable[Fraction]) -> int:
    L = 1
    for v in values:
        d = v.denominator
        if L % d:
            L = L * d // math.gcd(L, d)
    return L


def signed_area2(points: Sequence[Point]) -> Fraction:
    s = Fraction(0)
    n = len(points)
    for i in range(n):
        a, b = points[i], points[(i + 1) % n]
        s += a.x * b.y - a.y * b.x
    return s


@dataclass(frozen=True)
class Component:
    start: int
    length: int
    closed: bool
    role: str  # "outer", "hole", "box", "segment"


@dataclass
class Scene:
    kind: str
    points: tuple
    q: Point
    k_requested: int
    components: tuple
    box: Optional[tuple] = None
    nx: list = field(default_factory=list)
    pv: list = field(default_factory=list)
    comp_of: list = field(default_factory=list)

    def __post_init__(self):
        if self.k_requested < 0:
            raise DegenerateInput("k must be non-negative")
        self.view = ReadOnlyView(self.points)
        coords = [p.x for p in self.points] + [p.y for p in self.points] + [self.q.x, self.q.y]
        self.scale = _lcm_denominators(coords)
        L = self.scale
        self.X = [int((p.x - self.q.x) * L) for p in self.points]
        self.Y = [int((p.y - self.q.y) * L) for p in self.points]
        self.max_abs = max([abs(v) for v in self.X + self.Y] or [0])
        self._backend = None
        self._prefer_compiled = True

    # -- construction ---------------------------------------------------------

    @classmethod
    def _assemble(cls, kind, comps, q, k, box=None):
        points, nx, pv, comp_of, meta = [], [], [], [], []
        for ci, (pts, closed, role) in enumerate(comps):
            start = len(points)
            m = len(pts)
            for i, p in enumerate(pts):
                points.append(p)
                comp_of.append(ci)
                if closed:
                    nx.append(start + (i + 1) % m)
                    pv.append(start + (i - 1) % m)
                else:
                    nx.append(start + i + 1 if i + 1 < m else -1)
                    pv.append(start + i - 1 if i > 0 else -1)
            meta.append(Component(start, m, closed, role))
        return cls(kind, tuple(points), q, k, tuple(meta), box, nx, pv, comp_of)

    @classmethod
    def polygon(cls, points: Sequence, q, k: int) -> "Scene":
        pts = [p if isinstance(p, Point) else Point(*p) for p in points]
        if len(pts) < 3:
            raise DegenerateInput("a polygon needs at least 3 vertices")
        if signed_area2(pts) <= 0:
            raise DegenerateInput("polygon vertices must be in counterclockwise order")
        qp = q if isinstance(q, Point) else Point(*q)
        return cls._assemble(POLYGON, [(pts, True, "outer")], qp, k)

    @classmethod
    def with_holes(cls, outer: Sequence, holes: Sequence[Sequence], q, k: int) -> "Scene":
        o = [p if isinstance(p, Point) else Point(*p) for p in outer]
        if len(o) < 3 or signed_area2(o) <= 0:
            raise DegenerateInput("outer boundary must be a CCW polygon")
        comps = [(o, True, "outer")]
        for h in holes:
            hp = [p if isinstance(p, Point) else Point(*p) for p in h]
            if len(hp) < 3 or signed_area2(hp) >= 0:
                raise DegenerateInput("hole boundaries must be CW polygons")
            comps.append((hp, True, "hole"))
        qp = q if isinstance(q, Point) else Point(*q)
        return cls._assemble(HOLES, comps, qp, k)

    @classmethod
    def segments(cls, segs: Sequence, box: Sequence, q, k: int) -> "Scene":
        x0, y0, x1, y1 = (Fraction(v) for v in box)
        if not (x0 < x1 and y0 < y1):
            raise DegenerateInput("bounding box must have positive extent")
        corners = [Point(x0, y0), Point(x1, y0), Point(x1, y1), Point(x0, y1)]
        comps = [(corners, True, "box")]
        for a, b in segs:
            pa = a if isinstance(a, Point) else Point(*a)
            pb = b if isinstance(b, Point) else Point(*b)
            if pa == pb:
                raise DegenerateInput("zero-length segment")
            comps.append(([pa, pb], False, "segment"))
        qp = q if isinstance(q, Point) else Point(*q)
        return cls._assemble(SEGMENTS, comps, qp, k, (x0, y0, x1, y1))

    # -- derived quantities ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def edge_count(self) -> int:
        return sum(1 for j in self.nx if j >= 0)

    @property
    def k(self) -> int:
        """Effective k.

        Inside a closed boundary every crossing toggles in/out, so an odd k
        reaches no further than k-1 and is lowered.  Segment scenes have no
        parity and keep k as given.
        """
        if self.kind == SEGMENTS:
            return self.k_requested
        return self.k_requested - (self.k_requested % 2)

    @property
    def whole(self) -> bool:
        """True when k alone guarantees that the whole domain is k-visible."""
        if self.kind == SEGMENTS:
            return self.k_requested >= len(self.components) - 1
        return self.k_requested >= self.edge_count

    def edge_ids(self):
        return [j for j in range(self.n) if self.nx[j] >= 0]

    def backend(self) -> kernels.Backend:
        if self._backend is None:
            self._backend = kernels.make_backend(self.X, self.Y, self.nx, self.pv, self.max_abs, self._prefer_compiled)
        return self._backend

    def use_python_kernels(self) -> "Scene":
        self._prefer_compiled = False
        self._backend = None
        return self

    def point_on_ray(self, vi: int, num, den) -> Point:
        """The exact point ``q + (num/den) * (v_vi - q)`` in input coordinates."""
        t = num / den if isinstance(num, Fraction) else Fraction(int(num), int(den))
        p = self.points[vi]
        return Point(self.q.x + t * (p.x - self.q.x), self.q.y + t * (p.y - self.q.y))

    def to_frame(self, p: Point) -> tuple:
        return ((p.x - self.q.x) * self.scale, (p.y - self.q.y) * self.scale)

    # -- validation -----------------------------------------------------------

    def validate(self, exhaustive: Optional[bool] = None, seed: int = 0) -> "Scene":
        """Reject inputs that break weak general position, simplicity or containment."""
        if any(x == 0 and y == 0 for x, y in zip(self.X, self.Y)):
            raise DegenerateInput("query point coincides with a vertex")
        seen = {}
        for i, (x, y) in enumerate(zip(self.X, self.Y)):
            g = math.gcd(x, y)
            dx, dy = x // g, y // g
            if dx < 0 or (dx == 0 and dy < 0):
                dx, dy = -dx, -dy
            if (dx, dy) in seen:
                raise DegenerateInput(
                    f"query point lies on the line through vertices {seen[(dx, dy)]} and {i}"
                )
            seen[(dx, dy)] = i
        be = self.backend()
        if exhaustive is None:
            exhaustive = be.compiled or self.n <= 600
        if exhaustive:
            i, j = be.mod.first_bad_pair(be.X, be.Y, be.NX)
            if i >= 0:
                raise DegenerateInput(f"edges {int(i)} and {int(j)} intersect")
        else:
            self._sampled_simplicity(seed)
        self._check_containment()
        return self

    def _sampled_simplicity(self, seed: int, samples: int = 20000) -> None:
        from .geom import segments_cross_properly

        rng = random.Random(seed)
        edges = self.edge_ids()
        P = self.points
        for _ in range(samples):
            a, b = rng.choice(edges), rng.choice(edges)
            if a == b or self.nx[a] == b or self.nx[b] == a:
                continue
            if segments_cross_properly(P[a], P[self.nx[a]], P[b], P[self.nx[b]]):
                raise DegenerateInput(f"edges {a} and {b} intersect")

    def _far_point_count(self, fx: int, fy: int) -> int:
        be = self.backend()
        bound = self.max_abs * 4 + 4
        for attempt in range(64):
            px, py = bound + fx + attempt * 7, bound // 3 + fy + attempt * 13
            if be.compiled and max(abs(px), abs(py)) > 2 * kernels.INT64_COORD_LIMIT:
                c = kernels.PY.segment_crossings(self.X, self.Y, self.nx, px, py)
            else:
                c = be.mod.segment_crossings(be.X, be.Y, be.NX, px, py)
            if c >= 0:
                return int(c)
        raise DegenerateInput("could not find a non-degenerate containment ray")

    def _check_containment(self) -> None:
        if self.kind == SEGMENTS:
            x0, y0, x1, y1 = self.box
            if not (x0 < self.q.x < x1 and y0 < self.q.y < y1):
                raise DegenerateInput("query point must lie strictly inside the bounding box")
            # nothing may touch the box: segments sit strictly inside it
            for p in self.points[4:]:
                if not (x0 < p.x < x1 and y0 < p.y < y1):
                    raise DegenerateInput(f"segment endpoint {p} is not strictly inside the box")
            return
        if self._far_point_count(1, 1) % 2 != 1:
            raise DegenerateInput("query point must lie strictly inside the polygon")
        if self.kind == HOLES:
            from .oracle import point_in_closed_component

            for ci, c in enumerate(self.components[1:], start=1):
                p = self.points[c.start]
                if not point_in_closed_component(self, 0, p):
                    raise DegenerateInput(f"hole {ci} is not inside the outer boundary")
                for cj in range(1, len(self.components)):
                    if cj != ci and point_in_closed_component(self, cj, p):
                        raise DegenerateInput(f"hole {ci} lies inside hole {cj}")

    def critical_count(self) -> int:
        be = self.backend()
        c, _, _, err = be.mod.scan_critical(be.X, be.Y, be.NX, be.PV)
        if err:
            raise DegenerateInput("a vertex neighbour is collinear with the query point")
        return int(c)
