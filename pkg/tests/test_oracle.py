from fractions import Fraction

from kvis import fixtures
from kvis.geom import Point
from kvis.oracle import DEGENERATE, K_VISIBLE, NOT_K_VISIBLE, classify_point, oracle_windows
from kvis.scene import Scene


def test_cyclic_relabeling():
    sc = fixtures.load("poly_star8")
    base = oracle_windows(sc)
    for r in (1, 5, 17):
        pts = list(sc.points[r:] + sc.points[:r])
        rot = oracle_windows(Scene.polygon(pts, sc.q, sc.k))
        assert {(w.near.point, w.far.point) for w in rot} == {(w.near.point, w.far.point) for w in base}
        n = sc.n
        assert {(w.near.edge_index + r) % n for w in rot} == {w.near.edge_index for w in base}


def test_classify_point_square():
    sq = Scene.polygon([(0, 0), (10, 0), (10, 10), (0, 10)], (Fraction(1, 3), Fraction(2, 7)), 0)
    assert classify_point(sq, Point(5, 5)) == K_VISIBLE
    assert classify_point(sq, Point(20, 5)) == NOT_K_VISIBLE
    assert classify_point(sq, Point(10, 3)) == DEGENERATE
