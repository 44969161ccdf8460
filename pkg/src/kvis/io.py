"""Scene and result text formats.

Scene file::

    kvis 1
    polygon 4            | holes 2 / outer m / hole m ... | segments n box x0 y0 x1 y1
    0 0
    ...
    query 1/2 1/2
    k 2

Coordinates are integers, decimals or ``p/q`` rationals.  Blank lines and
``#`` comments are ignored.  Results print rationals exactly, so identical
runs give byte-identical files.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .geom import DegenerateInput, Point, format_rational
from .records import Arc, Chord, Marker, WindowEndpoint
from .scene import HOLES, POLYGON, SEGMENTS, Scene


class SceneParseError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


def _num(tok: str, line: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise SceneParseError(line, f"bad number {tok!r}") from None


def _int(tok: str, line: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise SceneParseError(line, f"bad integer {tok!r}") from None


class _Lines:
    def __init__(self, text: str):
        self.items = []
        for no, raw in enumerate(text.splitlines(), 1):
            body = raw.split("#", 1)[0].split()
            if body:
                self.items.append((no, body))
        self.pos = 0

    def next(self, what: str):
        if self.pos >= len(self.items):
            last = self.items[-1][0] if self.items else 0
            raise SceneParseError(last + 1, f"unexpected end of file, expected {what}")
        item = self.items[self.pos]
        self.pos += 1
        return item

    def points(self, count: int) -> list:
        out = []
        for _ in range(count):
            no, t = self.next("a point")
            if len(t) != 2:
                raise SceneParseError(no, "expected `x y`")
            out.append(Point(_num(t[0], no), _num(t[1], no)))
        return out

    def count(self, tokens, no, word) -> int:
        if len(tokens) != 2 or tokens[0] != word:
            raise SceneParseError(no, f"expected `{word} <count>`")
        c = _int(tokens[1], no)
        if c < 1:
            raise SceneParseError(no, f"{word} count must be positive")
        return c


def parse_scene(text: str, validate: bool = True) -> Scene:
    """Parse a scene file; errors carry the offending line number."""
    L = _Lines(text)
    no, t = L.next("header")
    if t != ["kvis", "1"]:
        raise SceneParseError(no, "expected header `kvis 1`")
    no, t = L.next("scene kind")
    kind = t[0]
    if kind == POLYGON:
        body = ("polygon", L.points(L.count(t, no, "polygon")))
    elif kind == HOLES:
        h = L.count(t, no, "holes")
        no, t = L.next("outer")
        outer = L.points(L.count(t, no, "outer"))
        holes = []
        for _ in range(h):
            no, t = L.next("hole")
            holes.append(L.points(L.count(t, no, "hole")))
        body = ("holes", outer, holes)
    elif kind == SEGMENTS:
        if len(t) != 7 or t[2] != "box":
            raise SceneParseError(no, "expected `segments n box x0 y0 x1 y1`")
        m = _int(t[1], no)
        box = [_num(v, no) for v in t[3:]]
        segs = []
        for _ in range(m):
            no2, s = L.next("a segment")
            if len(s) != 4:
                raise SceneParseError(no2, "expected `x0 y0 x1 y1`")
            v = [_num(x, no2) for x in s]
            segs.append((Point(v[0], v[1]), Point(v[2], v[3])))
        body = ("segments", segs, box)
    else:
        raise SceneParseError(no, f"unknown scene kind {kind!r}")
    no, t = L.next("query")
    if len(t) != 3 or t[0] != "query":
        raise SceneParseError(no, "expected `query x y`")
    q = Point(_num(t[1], no), _num(t[2], no))
    no, t = L.next("k")
    if len(t) != 2 or t[0] != "k":
        raise SceneParseError(no, "expected `k <int>`")
    k = _int(t[1], no)
    if L.pos != len(L.items):
        raise SceneParseError(L.items[L.pos][0], "trailing content")
    try:
        if body[0] == "polygon":
            scene = Scene.polygon(body[1], q, k)
        elif body[0] == "holes":
            scene = Scene.with_holes(body[1], body[2], q, k)
        else:
            scene = Scene.segments(body[1], body[2], q, k)
        if validate:
            scene.validate()
    except DegenerateInput as exc:
        raise DegenerateInput(f"line {no}: {exc}") from None
    return scene


def load_scene(path, validate: bool = True) -> Scene:
    with open(path, encoding="utf-8") as fh:
        return parse_scene(fh.read(), validate)


def _pt(p: Point) -> str:
    return f"{format_rational(p.x)} {format_rational(p.y)}"


def _component_points(scene, comp):
    return [scene.points[i] for i in range(comp.start, comp.start + comp.length)]


def print_scene(scene: Scene) -> str:
    out = ["kvis 1"]
    comps = scene.components
    if scene.kind == POLYGON:
        pts = _component_points(scene, comps[0])
        out.append(f"polygon {len(pts)}")
        out += [_pt(p) for p in pts]
    elif scene.kind == HOLES:
        out.append(f"holes {len(comps) - 1}")
        for c in comps:
            pts = _component_points(scene, c)
            out.append(f"{'outer' if c.role == 'outer' else 'hole'} {len(pts)}")
            out += [_pt(p) for p in pts]
    else:
        segs = [c for c in comps if c.role == "segment"]
        box = " ".join(format_rational(v) for v in scene.box)
        out.append(f"segments {len(segs)} box {box}")
        for c in segs:
            a, b = _component_points(scene, c)
            out.append(f"{_pt(a)} {_pt(b)}")
    out.append(f"query {_pt(scene.q)}")
    out.append(f"k {scene.k_requested}")
    return "\n".join(out) + "\n"


def primitive_direction(dx: Fraction, dy: Fraction) -> tuple:
    """The integer vector with coprime components pointing along (dx, dy)."""
    dx, dy = Fraction(dx), Fraction(dy)
    den = dx.denominator * dy.denominator // gcd(dx.denominator, dy.denominator)
    a, b = int(dx * den), int(dy * den)
    g = gcd(a, b) or 1
    return a // g, b // g


def _xy(p: Point) -> str:
    return f"{format_rational(p.x)},{format_rational(p.y)}"


def format_record(r) -> str:
    if isinstance(r, WindowEndpoint):
        dx, dy = primitive_direction(r.dir.dx, r.dir.dy)
        return f"W theta_dir={dx}/{dy} j={r.edge_index} type={r.type} at={_pt(r.point)}"
    if isinstance(r, Arc):
        return f"ARC e={r.edge} from={_xy(r.start)} to={_xy(r.end)}"
    if isinstance(r, Chord):
        return f"CHORD v={r.window.source_vertex} from={_xy(r.start)} to={_xy(r.end)}"
    if isinstance(r, Marker):
        return f"MARK {r.kind}"
    raise TypeError(f"cannot format {type(r).__name__}")


def format_result(records, reads: int, peak_words: int) -> str:
    lines = [format_record(r) for r in records]
    windows = sum(isinstance(r, WindowEndpoint) for r in records) // 2
    lines.append(f"STATS reads={reads} peak_words={peak_words} windows={windows}")
    return "\n".join(lines) + "\n"
