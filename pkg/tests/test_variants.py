import pytest

from kvis import fixtures
from kvis.boundary import closed_loops
from kvis.generate import random_scene
from kvis.oracle import oracle_segment_parts, oracle_window_set
from kvis.records import MARK_WHOLE, Arc, Chord, Marker, window_set
from kvis.scene import Scene
from kvis.variants import boundary_holes, region_boundary_segments, visible_parts_segments, windows_holes

from test_acceptance import _parts_from_records


def test_holes1_windows():
    sc = fixtures.load("holes1")
    for algo in ("const", "batch-all", "batch-crit"):
        assert window_set(windows_holes(sc, algo, 2).records()) == oracle_window_set(sc)
    assert len(oracle_window_set(sc)) == 2


def test_holes1_boundary_has_windowless_hole():
    sc = fixtures.load("holes1")
    recs = boundary_holes(sc).records()
    assert closed_loops(recs)
    comps = {sc.comp_of[r.edge] for r in recs if isinstance(r, Arc)}
    assert 0 in comps


def test_kind_checked():
    with pytest.raises(ValueError):
        windows_holes(fixtures.load("poly_star8"))
    with pytest.raises(ValueError):
        visible_parts_segments(fixtures.load("holes1"))


@pytest.mark.parametrize("algo", ["const", "batch-all", "batch-crit"])
def test_seg_layers_parts(algo):
    sc = fixtures.load("seg_layers")
    want = {e: v for e, v in oracle_segment_parts(sc).items() if v}
    assert _parts_from_records(sc, visible_parts_segments(sc, algo, 4).records()) == want


def test_seg_layers_region():
    sc = fixtures.load("seg_layers")
    recs = region_boundary_segments(sc, 3).records()
    assert closed_loops(recs)
    assert sum(isinstance(r, Chord) for r in recs) == len(oracle_window_set(sc)) == 8


def test_segments_odd_k_is_kept():
    sc = fixtures.load("seg_layers")
    odd = Scene.segments([(sc.points[c.start], sc.points[c.start + 1]) for c in sc.components[1:]], sc.box, sc.q, 3)
    assert odd.k == 3
    assert window_set(visible_parts_segments(odd).records()) == oracle_window_set(odd)


def test_segments_whole():
    sc = random_scene(4, 5, "segments", 5)
    assert sc.whole
    recs = region_boundary_segments(sc).records()
    assert recs[0] == Marker(MARK_WHOLE) and len(recs) == 5
    parts = visible_parts_segments(sc).records()
    assert sum(isinstance(r, Arc) for r in parts) == 5
