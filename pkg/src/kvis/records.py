"""Record types shared by the algorithms, the oracle and the CLI."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .geom import Direction, Point


class VertexClass:
    START = "StartCritical"
    END = "EndCritical"
    NONCRITICAL = "NonCritical"


CCW = "CCW"
CW = "CW"

INTERIOR = "interior"
VERTEX = "vertex"
VERTEX_DOUBLE = "vertex-double"


@dataclass(frozen=True)
class CrossingRecord:
    """One entry of a ray's edge list.

    ``kind`` is ``vertex-double`` for a critical vertex on the ray (it takes
    two consecutive ranks) and ``vertex`` for a non-critical one.
    """

    edge_index: int
    t: Fraction
    kind: str = INTERIOR

    @property
    def weight(self) -> int:
        return 2 if self.kind == VERTEX_DOUBLE else 1


@dataclass(frozen=True)
class WindowEndpoint:
    dir: Direction
    edge_index: int
    type: str
    point: Point
    source_vertex: int = -1
    t: Fraction = Fraction(0)

    def key(self) -> tuple:
        """Identity used for set comparison: the triple plus the exact point."""
        return (self.point.x, self.point.y, self.edge_index, self.type)


@dataclass(frozen=True)
class Window:
    source_vertex: int
    near: WindowEndpoint
    far: WindowEndpoint

    @property
    def type(self) -> str:
        return self.near.type

    def key(self) -> tuple:
        return (self.near.key(), self.far.key())


@dataclass(frozen=True)
class Arc:
    """A k-visible piece of boundary edge ``edge`` traversed from ``start`` to ``end``."""

    edge: int
    start: Point
    end: Point


@dataclass(frozen=True)
class Chord:
    window: Window
    start: Point
    end: Point


@dataclass(frozen=True)
class Marker:
    """Explicit short-circuit outputs: ``whole`` (k large enough that the whole
    domain is visible) and ``no-critical`` (no window can exist)."""

    kind: str
    component: Optional[int] = None


MARK_WHOLE = "whole"
MARK_NO_CRITICAL = "no-critical"

BoundaryPiece = Union[Arc, Chord]


def windows_from_stream(records) -> list:
    """Pair consecutive endpoints back into :class:`Window` objects."""
    out = []
    pending = None
    for r in records:
        if not isinstance(r, WindowEndpoint):
            continue
        if pending is None:
            pending = r
        else:
            out.append(Window(pending.source_vertex, pending, r))
            pending = None
    if pending is not None:
        raise ValueError("odd number of window endpoints in stream")
    return out


def window_set(records) -> frozenset:
    return frozenset(w.key() for w in (records if _all_windows(records) else windows_from_stream(records)))


def _all_windows(records) -> bool:
    return bool(records) and all(isinstance(r, Window) for r in records)
