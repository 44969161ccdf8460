import random
from fractions import Fraction

import pytest

from kvis import fixtures
from kvis.geom import Point

_ACCEPT = {}


@pytest.fixture(scope="session")
def fixture_scenes():
    return {name: fixtures.load(name) for name in fixtures.NAMES}


def near_boundary_points(scene, v, eps=Fraction(1, 10**7)):
    """Two points straddling the boundary next to vertex ``v`` along the ray from q."""
    P = scene.points
    j = v if scene.nx[v] >= 0 else scene.pv[v]
    a, b = P[j], P[scene.nx[j]]
    u = eps if j == v else 1 - eps
    p = Point(a.x + u * (b.x - a.x), a.y + u * (b.y - a.y))
    q = scene.q
    return [Point(q.x + f * (p.x - q.x), q.y + f * (p.y - q.y)) for f in (1 - eps * eps, 1 + eps * eps)]


def sample_frame_points(scene, count, seed, margin=50):
    """``count`` random integer frame points over the scene's bounding box."""
    rng = random.Random(seed)
    L = scene.scale
    xs = [(p.x - scene.q.x) * L for p in scene.points]
    ys = [(p.y - scene.q.y) * L for p in scene.points]
    x0, x1 = int(min(xs)) - margin, int(max(xs)) + margin
    y0, y1 = int(min(ys)) - margin, int(max(ys)) + margin
    for _ in range(count):
        yield rng.randint(x0, x1), rng.randint(y0, y1)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        _ACCEPT[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPT:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPT):
        terminalreporter.write_line(f"{name}: {'PASS' if _ACCEPT[name] == 'passed' else 'FAIL'}")
