import pytest

from kvis import fixtures
from kvis.geom import DegenerateInput, Point
from kvis.io import SceneParseError, format_record, parse_scene, primitive_direction, print_scene
from kvis.records import Marker


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_round_trip(name):
    sc = fixtures.load(name)
    again = parse_scene(print_scene(sc))
    assert again == sc
    assert print_scene(again) == fixtures.path(name).read_text()


SQUARE = "kvis 1\npolygon 4\n0 0\n4 0\n4 4\n0 4\nquery 1/3 0.5\nk 0\n"


def test_rationals_and_decimals():
    sc = parse_scene("# a comment\n" + SQUARE)
    assert sc.q == Point("1/3", "1/2")


@pytest.mark.parametrize(
    "text, line",
    [
        ("kvis 2\n", 1),
        ("kvis 1\npolygon 4\n0 0\n4 0\n4 x\n0 4\nquery 1 1\nk 0\n", 5),
        ("kvis 1\npolygon 4\n0 0\n4 0\n4 4\n", 6),
        ("kvis 1\nhexagon 4\n", 2),
        (SQUARE.replace("k 0", "k two"), 8),
        (SQUARE + "extra\n", 9),
        ("kvis 1\nsegments 1 box 0 0\n", 2),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(SceneParseError) as err:
        parse_scene(text)
    assert err.value.line == line and str(err.value).startswith(f"line {line}:")


def test_clockwise_polygon_rejected():
    with pytest.raises(DegenerateInput):
        parse_scene("kvis 1\npolygon 3\n0 0\n0 4\n4 0\nquery 1 1\nk 0\n")


def test_direction_is_primitive():
    assert primitive_direction(6, -4) == (3, -2)
    assert primitive_direction("1/2", "3/4") == (2, 3)


def test_marker_line():
    assert format_record(Marker("whole")) == "MARK whole"
