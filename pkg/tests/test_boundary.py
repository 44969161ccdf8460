from fractions import Fraction

import pytest

from kvis import fixtures
from kvis.boundary import RegionTester, closed_loops, forward_visible, report_boundary_with
from kvis.generate import random_scene
from kvis.oracle import DEGENERATE, K_VISIBLE, classify_frame_point
from kvis.records import MARK_NO_CRITICAL, MARK_WHOLE, Arc, Chord, Marker, windows_from_stream
from kvis.core import windows_constant
from kvis.scene import Scene

from conftest import sample_frame_points


def _agree(scene, recs, points=3000, seed=0):
    region = RegionTester(recs)
    L = scene.scale
    bad = 0
    for fx, fy in sample_frame_points(scene, points, seed):
        if (fx, fy) == (0, 0):
            continue
        v = classify_frame_point(scene, fx, fy)
        if v != DEGENERATE:
            bad += (v == K_VISIBLE) != region.contains(scene.q.x + Fraction(fx, L), scene.q.y + Fraction(fy, L))
    return bad


@pytest.mark.parametrize("name", ["poly_fig1", "poly_fig2", "poly_star8", "comb16", "holes1"])
@pytest.mark.parametrize("algo", ["const", "batch-all", "batch-crit", "oracle"])
def test_fixture_boundaries(name, algo):
    sc = fixtures.load(name)
    recs = report_boundary_with(sc, algo, 3).records()
    assert closed_loops(recs)
    assert _agree(sc, recs) == 0


def test_one_chord_per_window():
    sc = fixtures.load("comb16")
    recs = report_boundary_with(sc, "const").records()
    chords = [r for r in recs if isinstance(r, Chord)]
    assert len(chords) == len(windows_from_stream(windows_constant(sc).records())) == 13


def test_each_window_has_one_forward_visible_end():
    for name in ("poly_star8", "comb16", "holes1"):
        sc = fixtures.load(name)
        for w in windows_from_stream(windows_constant(sc).records()):
            assert forward_visible(sc, w.near) != forward_visible(sc, w.far)


def test_fig2_single_chord():
    recs = report_boundary_with(fixtures.load("poly_fig2"), "const").records()
    assert sum(isinstance(r, Chord) for r in recs) == 1


def test_no_critical_keeps_outline():
    sc = fixtures.load("convex32")
    recs = report_boundary_with(sc, "const").records()
    assert recs[0] == Marker(MARK_NO_CRITICAL)
    assert [r.edge for r in recs[1:]] == list(range(sc.n))


def test_whole():
    sc = fixtures.load("poly_star8")
    whole = Scene.polygon(list(sc.points), sc.q, 100)
    recs = report_boundary_with(whole, "batch-all", 2).records()
    assert recs[0] == Marker(MARK_WHOLE) and sum(isinstance(r, Arc) for r in recs) == sc.n


@pytest.mark.parametrize("profile", ["star", "random-simple", "holes", "comb"])
def test_random_boundaries(profile):
    for seed in range(6):
        sc = random_scene(300 + seed, 14 + 5 * seed, profile, (0, 2, 4)[seed % 3])
        recs = report_boundary_with(sc, "const").records()
        assert closed_loops(recs)
        assert _agree(sc, recs, 1500, seed) == 0
