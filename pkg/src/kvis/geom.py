"""Exact geometric primitives on rational coordinates.

All values are :class:`fractions.Fraction`; nothing here ever touches a float.
Angles are represented by direction vectors and compared with a half-plane
index plus a cross-product sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional


class DegenerateInput(ValueError):
    """Raised when an input violates weak general position or simplicity."""


def to_rational(value) -> Fraction:
    """Convert ints, Fractions and decimal or ``p/q`` strings exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a decimal string")
    return Fraction(value)


@dataclass(frozen=True, order=True)
class Point:
    x: Fraction
    y: Fraction

    def __init__(self, x, y):
        object.__setattr__(self, "x", to_rational(x))
        object.__setattr__(self, "y", to_rational(y))

    def __sub__(self, other: "Point") -> "Direction":
        return Direction(self.x - other.x, self.y - other.y)

    def __add__(self, d: "Direction") -> "Point":
        return Point(self.x + d.dx, self.y + d.dy)

    def __repr__(self) -> str:
        return f"Point({self.x}, {self.y})"


@dataclass(frozen=True)
class Direction:
    dx: Fraction
    dy: Fraction

    def __init__(self, dx, dy):
        dx, dy = to_rational(dx), to_rational(dy)
        if dx == 0 and dy == 0:
            raise ValueError("zero direction")
        object.__setattr__(self, "dx", dx)
        object.__setattr__(self, "dy", dy)

    def scaled(self, t) -> "Direction":
        return Direction(self.dx * t, self.dy * t)

    def __lt__(self, other: "Direction") -> bool:
        return angular_compare(self, other) < 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, Direction):
            return NotImplemented
        return angular_compare(self, other) == 0

    def __hash__(self) -> int:
        # Hash the primitive representative so positive multiples collide.
        dx, dy = self.dx, self.dy
        m = max(abs(dx), abs(dy))
        return hash((dx / m, dy / m))

    def __repr__(self) -> str:
        return f"Direction({self.dx}, {self.dy})"


def sign(v) -> int:
    return (v > 0) - (v < 0)


def cross(ax, ay, bx, by):
    return ax * by - ay * bx


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of (b - a) x (c - a): +1 for a left turn, -1 right, 0 collinear."""
    return sign((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x))


def half_plane(dx, dy) -> int:
    """0 for angles in [0, pi), 1 for [pi, 2pi)."""
    return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1


def angular_compare(d1: Direction, d2: Direction) -> int:
    """Compare CCW angles in [0, 2pi) measured from the positive x-axis."""
    h1, h2 = half_plane(d1.dx, d1.dy), half_plane(d2.dx, d2.dy)
    if h1 != h2:
        return -1 if h1 < h2 else 1
    return -sign(cross(d1.dx, d1.dy, d2.dx, d2.dy))


class Hit:
    INTERIOR = "interior"
    ENDPOINT_A = "endpoint-a"
    ENDPOINT_B = "endpoint-b"


class SegmentHit(NamedTuple):
    t: Fraction
    kind: str


def ray_segment_intersect(q: Point, d: Direction, a: Point, b: Point) -> Optional[SegmentHit]:
    """Intersect the ray ``q + t*d`` (t >= 0) with the closed segment ``ab``.

    Endpoint hits are reported separately from interior crossings so the
    caller can apply the vertex double-count rule.
    """
    ex, ey = b.x - a.x, b.y - a.y
    ax, ay = a.x - q.x, a.y - q.y
    den = cross(d.dx, d.dy, ex, ey)
    if den == 0:
        if cross(ax, ay, d.dx, d.dy) == 0:
            raise DegenerateInput(f"segment {a}-{b} lies on the supporting line of the ray")
        return None
    t = Fraction(cross(ax, ay, ex, ey)) / den
    u = Fraction(cross(ax, ay, d.dx, d.dy)) / den
    if t < 0 or u < 0 or u > 1:
        return None
    if u == 0:
        return SegmentHit(t, Hit.ENDPOINT_A)
    if u == 1:
        return SegmentHit(t, Hit.ENDPOINT_B)
    return SegmentHit(t, Hit.INTERIOR)


def segments_cross_properly(p1: Point, p2: Point, p3: Point, p4: Point) -> bool:
    """True when the open segments p1p2 and p3p4 cross at a single interior point."""
    d1 = orient(p3, p4, p1)
    d2 = orient(p3, p4, p2)
    d3 = orient(p1, p2, p3)
    d4 = orient(p1, p2, p4)
    return d1 * d2 < 0 and d3 * d4 < 0


def on_segment(p: Point, a: Point, b: Point) -> bool:
    if orient(a, b, p) != 0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def format_rational(v: Fraction) -> str:
    v = to_rational(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
