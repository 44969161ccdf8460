"""SVG 1.1 drawing of a scene and a result stream."""

from __future__ import annotations

from xml.sax.saxutils import quoteattr

from .records import Arc, Chord, WindowEndpoint

SIZE = 800
PAD = 20


def _fmt(v: float) -> str:
    return f"{v:.3f}"


class _Frame:
    def __init__(self, scene):
        xs = [p.x for p in scene.points] + [scene.q.x]
        ys = [p.y for p in scene.points] + [scene.q.y]
        self.x0, self.y1 = min(xs), max(ys)
        span = max(max(xs) - self.x0, self.y1 - min(ys)) or 1
        self.f = (SIZE - 2 * PAD) / float(span)

    def __call__(self, p):
        return _fmt(PAD + float(p.x - self.x0) * self.f), _fmt(PAD + float(self.y1 - p.y) * self.f)


def _line(fr, a, b, style):
    (x1, y1), (x2, y2) = fr(a), fr(b)
    return f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" {style}/>'


def render_svg(records, scene, title: str = "") -> str:
    """Scene boundary thin, region boundary thick, windows dashed, q as a dot."""
    fr = _Frame(scene)
    P = scene.points
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
    ]
    if title:
        out.append(f"<title>{title}</title>")
    out.append('<g id="scene" stroke="#777" stroke-width="1" fill="none">')
    for j in scene.edge_ids():
        out.append(_line(fr, P[j], P[scene.nx[j]], ""))
    out.append("</g>")
    out.append('<g id="region" stroke="#1565c0" stroke-width="3" fill="none">')
    for r in records:
        if isinstance(r, Arc):
            out.append(_line(fr, r.start, r.end, ""))
    out.append("</g>")
    out.append('<g id="windows" stroke="#c62828" stroke-width="2" stroke-dasharray="6,4" fill="none">')
    pending = None
    drawn = set()
    for r in records:
        if isinstance(r, Chord):
            seg = (r.start, r.end)
        elif isinstance(r, WindowEndpoint):
            if pending is None:
                pending = r
                continue
            seg, pending = (pending.point, r.point), None
        else:
            continue
        key = tuple(sorted(seg))
        if key not in drawn:
            drawn.add(key)
            out.append(_line(fr, seg[0], seg[1], f"class={quoteattr('window')}"))
    out.append("</g>")
    qx, qy = fr(scene.q)
    out.append(f'<circle id="q" cx="{qx}" cy="{qy}" r="4" fill="#000"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
