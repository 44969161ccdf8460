"""Seeded scene generators.

Every profile produces integer coordinates with the query point at an
integer position and all coordinates within ``COORD_RANGE`` of it, so the
compiled kernels stay exact.  Candidates violating weak general position or
simplicity are repaired by small jitter or rejected and redrawn.
"""

from __future__ import annotations

import math
import random

from .geom import DegenerateInput, Point
from .scene import Scene, signed_area2

COORD_RANGE = 8000
MAX_TRIES = 200

PROFILES = ("convex", "star", "comb", "random-simple", "holes", "segments")


class GenerationFailure(RuntimeError):
    pass


def _primitive(x, y):
    g = math.gcd(x, y)
    x, y = x // g, y // g
    if x < 0 or (x == 0 and y < 0):
        x, y = -x, -y
    return x, y


def _jitter_general_position(pts, q, rng, frozen=0, rounds=50):
    """Nudge vertices (index >= frozen) until no two are collinear with q."""
    pts = list(pts)
    for _ in range(rounds):
        seen = {}
        bad = None
        for i, (x, y) in enumerate(pts):
            if (x, y) == q:
                bad = i
                break
            d = _primitive(x - q[0], y - q[1])
            if d in seen:
                bad = i if i >= frozen else seen[d]
                break
            seen[d] = i
        if bad is None:
            return pts
        if bad < frozen:
            raise GenerationFailure("collinearity among frozen vertices")
        x, y = pts[bad]
        pts[bad] = (x + rng.choice((-1, 1)), y + rng.choice((-1, 0, 1)))
    raise GenerationFailure("could not reach weak general position")


def _try(build, seed, validate=True):
    rng = random.Random(seed)
    last = None
    for _ in range(MAX_TRIES):
        try:
            scene = build(rng)
            if validate:
                scene.validate()
            return scene
        except (DegenerateInput, GenerationFailure) as exc:
            last = exc
    raise GenerationFailure(f"no valid scene after {MAX_TRIES} attempts: {last}")


# -- polygons -------------------------------------------------------------------


def convex(seed: int, n: int, k: int = 0) -> Scene:
    """Points on a rounded circle; every vertex is non-critical."""

    def build(rng):
        R = COORD_RANGE - 10
        angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(n))
        pts = [(round(R * math.cos(a)), round(R * math.sin(a))) for a in angles]
        if len(set(pts)) < n:
            raise GenerationFailure("repeated point")
        for i in range(n):
            a, b, c = pts[i - 2], pts[i - 1], pts[i]
            if (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) <= 0:
                raise GenerationFailure("not strictly convex")
        q = (rng.randint(-R // 4, R // 4), rng.randint(-R // 4, R // 4))
        return Scene.polygon(_jitter_general_position(pts, q, rng, frozen=n), q, k)

    return _try(build, seed)


def _subdivide(outline, n, rng):
    """Insert points along the edges of ``outline`` until it has ``n`` vertices."""
    m = len(outline)
    if n <= m:
        return list(outline)
    lengths = [math.dist(outline[i], outline[(i + 1) % m]) for i in range(m)]
    total = sum(lengths)
    extra = n - m
    counts = [int(extra * L / total) for L in lengths]
    order = sorted(range(m), key=lambda i: -lengths[i])
    for i in order[: extra - sum(counts)]:
        counts[i] += 1
    out = []
    for i in range(m):
        a, b = outline[i], outline[(i + 1) % m]
        out.append(a)
        c = counts[i]
        for s in range(1, c + 1):
            f = s / (c + 1)
            out.append((round(a[0] + f * (b[0] - a[0])), round(a[1] + f * (b[1] - a[1]))))
    return out


def _polar(r, deg):
    a = math.radians(deg)
    return (round(r * math.cos(a)), round(r * math.sin(a)))


def star_outline(arms: int = 8, r: int = 1500, R: int = 7500, rot: float = 0.0):
    """Pinwheel: each arm leans back on its return edge, giving one END tip
    corner and one START base vertex per arm."""
    w = 360.0 / arms
    pts = []
    for a in range(arms):
        base = rot + a * w
        pts += [_polar(r, base), _polar(R, base + 0.45 * w), _polar(R, base + 0.85 * w), _polar(r, base + 0.25 * w)]
    return pts


def star(seed: int, n: int = 32, k: int = 0, arms: int = 8) -> Scene:
    """Pinwheel star with ``2*arms`` critical vertices, subdivided to ``n`` vertices."""

    def build(rng):
        outline = star_outline(arms, rot=rng.uniform(0, 360.0 / arms))
        pts = _subdivide(outline, n, rng)
        q = (rng.randint(-40, 40), rng.randint(-40, 40))
        pts = _jitter_general_position(pts, q, rng)
        return Scene.polygon(pts, q, k)

    return _try(build, seed)


def comb(seed: int, n: int = 64, k: int = 0, teeth: int = 16) -> Scene:
    """A bar with upward teeth; q sits in the bar, so tooth corners turn critical."""

    def build(rng):
        W = 2 * (COORD_RANGE - 200)
        x0 = -W // 2
        pitch = W / teeth
        h, H = -COORD_RANGE + 2000, COORD_RANGE - 200
        pts = [(x0, -COORD_RANGE + 200), (x0 + W, -COORD_RANGE + 200)]
        top = []
        for t in range(teeth):
            a = x0 + t * pitch
            lean = rng.randint(-int(pitch * 0.15), int(pitch * 0.15))
            top += [
                (round(a), h),
                (round(a + 0.15 * pitch) + lean, H - rng.randint(0, 300)),
                (round(a + 0.55 * pitch) + lean, H - rng.randint(0, 300)),
                (round(a + 0.7 * pitch), h),
            ]
        pts += [(x0 + W, h)] + top[::-1][:-1]
        pts = _subdivide(pts, n, rng)
        q = (rng.randint(-200, 200), rng.randint(-COORD_RANGE + 600, h - 600))
        pts = _jitter_general_position(pts, q, rng)
        if signed_area2([Point(*p) for p in pts]) <= 0:
            raise GenerationFailure("orientation")
        return Scene.polygon(pts, q, k)

    return _try(build, seed)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _proper(p1, p2, p3, p4):
    d1, d2 = _cross(p3, p4, p1), _cross(p3, p4, p2)
    d3, d4 = _cross(p1, p2, p3), _cross(p1, p2, p4)
    return ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0))


def _two_opt(pts, rng, limit=20000):
    pts = list(pts)
    n = len(pts)
    for _ in range(limit):
        found = False
        for i in range(n):
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue
                if _proper(pts[i], pts[i + 1], pts[j], pts[(j + 1) % n]):
                    pts[i + 1 : j + 1] = pts[i + 1 : j + 1][::-1]
                    found = True
                    break
            if found:
                break
        if not found:
            return pts
    raise GenerationFailure("2-opt did not converge")


def _inside(pts, p):
    inside = False
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        if (a[1] > p[1]) != (b[1] > p[1]):
            x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            if x > p[0]:
                inside = not inside
    return inside


def random_simple(seed: int, n: int = 32, k: int = 0, spread: int = 6000) -> Scene:
    """Random points untangled by 2-opt moves, with q drawn inside."""

    def build(rng):
        pts = list({(rng.randint(-spread, spread), rng.randint(-spread, spread)) for _ in range(n)})
        if len(pts) < n:
            raise GenerationFailure("repeated point")
        rng.shuffle(pts)
        pts = _two_opt(pts, rng)
        if signed_area2([Point(*p) for p in pts]) < 0:
            pts.reverse()
        for _ in range(400):
            q = (rng.randint(-spread, spread), rng.randint(-spread, spread))
            if _inside(pts, q):
                break
        else:
            raise GenerationFailure("no interior query point")
        pts = _jitter_general_position(pts, q, rng, frozen=n)
        return Scene.polygon(pts, q, k)

    return _try(build, seed)


def holes(seed: int, n: int = 24, k: int = 0, count: int = 3) -> Scene:
    """Convex outer boundary with small CW quadrilateral holes around q."""

    def build(rng):
        m = max(3, n - 4 * count)
        R = COORD_RANGE - 10
        angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(m))
        outer = [(round(R * math.cos(a)), round(R * math.sin(a))) for a in angles]
        for i in range(m):
            if _cross(outer[i - 2], outer[i - 1], outer[i]) <= 0:
                raise GenerationFailure("outer not convex")
        q = (rng.randint(-300, 300), rng.randint(-300, 300))
        hs = []
        for _ in range(count):
            cx, cy = rng.randint(-R // 2, R // 2), rng.randint(-R // 2, R // 2)
            s = rng.randint(300, 1200)
            rot = rng.uniform(0, math.pi / 2)
            quad = [
                (round(cx + s * math.cos(rot + t * math.pi / 2 + rng.uniform(-0.2, 0.2))), round(cy + s * math.sin(rot + t * math.pi / 2 + rng.uniform(-0.2, 0.2))))
                for t in range(4)
            ]
            hs.append(quad[::-1])
        flat = _jitter_general_position(outer + [p for h in hs for p in h], q, rng, frozen=m)
        hs = [flat[m + 4 * i : m + 4 * i + 4] for i in range(count)]
        for i, h in enumerate(hs):
            if _inside(h, q):
                raise GenerationFailure("hole contains q")
        return Scene.with_holes(outer, hs, q, k)

    return _try(build, seed)


def segments(seed: int, n: int = 12, k: int = 0) -> Scene:
    """``n`` disjoint random segments in a box around q."""

    def build(rng):
        B = COORD_RANGE - 10
        q = (rng.randint(-200, 200), rng.randint(-200, 200))
        segs = []
        for _ in range(20 * n):
            if len(segs) == n:
                break
            a = (rng.randint(-B + 50, B - 50), rng.randint(-B + 50, B - 50))
            ang = rng.uniform(0, 2 * math.pi)
            L = rng.randint(500, 4000)
            b = (round(a[0] + L * math.cos(ang)), round(a[1] + L * math.sin(ang)))
            if not (-B < b[0] < B and -B < b[1] < B):
                continue
            if any(_proper(a, b, c, d) or _touch(a, b, c, d) for c, d in segs):
                continue
            segs.append((a, b))
        if len(segs) < n:
            raise GenerationFailure("could not place segments")
        box = [(-B, -B), (B, -B), (B, B), (-B, B)]
        flat = _jitter_general_position(box + [p for s in segs for p in s], q, rng, frozen=4)
        segs = [(flat[4 + 2 * i], flat[5 + 2 * i]) for i in range(n)]
        return Scene.segments(segs, (-B, -B, B, B), q, k)

    return _try(build, seed)


def _touch(a, b, c, d, margin=0):
    # conservative: reject anything within a collinear or endpoint-touching configuration
    for p, (s, t) in ((a, (c, d)), (b, (c, d)), (c, (a, b)), (d, (a, b))):
        if _cross(s, t, p) == 0 and min(s[0], t[0]) <= p[0] <= max(s[0], t[0]) and min(s[1], t[1]) <= p[1] <= max(s[1], t[1]):
            return True
    return False


def random_scene(seed: int, n: int, profile: str, k: int = 0) -> Scene:
    if profile == "convex":
        return convex(seed, n, k)
    if profile == "star":
        return star(seed, n, k)
    if profile == "comb":
        return comb(seed, n, k)
    if profile == "random-simple":
        return random_simple(seed, n, k)
    if profile == "holes":
        return holes(seed, n, k)
    if profile == "segments":
        return segments(seed, n, k)
    raise ValueError(f"unknown profile {profile!r}; choose from {', '.join(PROFILES)}")
