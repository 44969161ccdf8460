"""Scenes with holes and scenes of segments.

The window algorithms and the boundary walk already run on any scene the
:class:`~kvis.scene.Scene` builders accept; the helpers here fix the
scene kind and add the segment-specific outputs.
"""

from __future__ import annotations

from .batched import windows_batched_all
from .boundary import algorithm_handle, emit_whole_component, report_boundary, walk_open_component
from .engine import Engine
from .memory import INDEX_WORDS, POINT_WORDS, WorkspaceMeter, WriteOnlySink
from .records import MARK_NO_CRITICAL, MARK_WHOLE, Chord, Marker, Window, WindowEndpoint
from .scene import HOLES, SEGMENTS


def _require(scene, kind):
    if scene.kind != kind:
        raise ValueError(f"expected a {kind} scene, got {scene.kind}")


def windows_holes(scene, algo: str = "const", s: int = 1, meter=None, sink=None, engine=None):
    _require(scene, HOLES)
    sink = sink if sink is not None else WriteOnlySink()
    algorithm_handle(algo, s)(scene, sink, engine or Engine(scene, meter))
    return sink


def boundary_holes(scene, algo: str = "const", s: int = 1, meter=None, sink=None, engine=None):
    """Boundary of the region in a polygon with holes, one component after another."""
    _require(scene, HOLES)
    return report_boundary(scene, algorithm_handle(algo, s), meter, sink, engine)


def visible_parts_segments(scene, algo: str = "const", s: int = 1, meter: WorkspaceMeter | None = None, sink: WriteOnlySink | None = None, engine: Engine | None = None):
    """Windows, then the k-visible sub-segments of every segment as arcs."""
    _require(scene, SEGMENTS)
    run = algorithm_handle(algo, s)
    eng = engine or Engine(scene, meter)
    sink = sink if sink is not None else WriteOnlySink()
    run(scene, sink, eng)
    with eng.meter.hold(3 * POINT_WORDS + 4 * INDEX_WORDS, "segment walk"):
        for ci, comp in enumerate(scene.components):
            if scene.whole:
                if not comp.closed:
                    emit_whole_component(scene, sink, comp)
            elif not comp.closed:
                walk_open_component(scene, run, eng, sink, ci)
    return sink


class _ChordSink:
    """Turns each emitted endpoint pair into a chord; passes arcs and markers on."""

    def __init__(self, out):
        self.out = out
        self.pending = None

    def emit(self, record):
        if not isinstance(record, WindowEndpoint):
            self.out.emit(record)
            return
        if self.pending is None:
            self.pending = record
            return
        near, self.pending = self.pending, None
        self.out.emit(Chord(Window(near.source_vertex, near, record), near.point, record.point))


def region_boundary_segments(scene, s: int = 1, meter: WorkspaceMeter | None = None, sink: WriteOnlySink | None = None, engine: Engine | None = None):
    """Boundary of the region among segments: traced arcs plus window chords.

    The region is star-shaped from q: along each ray it is the stretch up to
    the first of e(k+1) and the box, so one traced sweep gives its outline.
    """
    _require(scene, SEGMENTS)
    eng = engine or Engine(scene, meter)
    sink = sink if sink is not None else WriteOnlySink()
    if scene.whole or eng.scan_critical()[0] == 0:
        sink.emit(Marker(MARK_WHOLE if scene.whole else MARK_NO_CRITICAL))
        emit_whole_component(scene, sink, scene.components[0])
        return sink
    with eng.meter.hold(POINT_WORDS + INDEX_WORDS, "chord pairing"):
        windows_batched_all(scene, s, sink=_ChordSink(sink), engine=eng, trace=True)
    return sink
