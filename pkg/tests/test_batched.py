import pytest

from kvis import fixtures
from kvis.batched import BOUNDS, windows_batched_all, windows_batched_critical
from kvis.engine import Engine
from kvis.generate import random_scene
from kvis.memory import BudgetExceeded, WorkspaceMeter
from kvis.oracle import oracle_window_set
from kvis.records import MARK_NO_CRITICAL, MARK_WHOLE, Arc, Marker, window_set
from kvis.scene import Scene

ALGOS = {"all": windows_batched_all, "crit": windows_batched_critical}


@pytest.mark.parametrize("algo", sorted(ALGOS))
@pytest.mark.parametrize("s", [1, 2, 4, 8, 16])
def test_star8_all_s(algo, s):
    sc = fixtures.load("poly_star8")
    assert window_set(ALGOS[algo](sc, s).records()) == oracle_window_set(sc)


@pytest.mark.parametrize("algo", sorted(ALGOS))
def test_fixtures(algo):
    for name in fixtures.NAMES:
        sc = fixtures.load(name)
        for s in (1, 3, sc.n):
            assert window_set(ALGOS[algo](sc, s).records()) == oracle_window_set(sc), (name, s)


@pytest.mark.parametrize("profile", ["star", "comb", "random-simple", "holes", "segments"])
def test_random_profiles(profile):
    for seed in range(10):
        sc = random_scene(100 + seed, 12 + 4 * seed, profile, (0, 2, 4, 6)[seed % 4])
        want = oracle_window_set(sc)
        for s in (1, 2, 5, sc.n):
            for f in ALGOS.values():
                assert window_set(f(sc, s).records()) == want


def test_markers():
    assert windows_batched_all(fixtures.load("convex32"), 4).records() == [Marker(MARK_NO_CRITICAL)]
    sc = fixtures.load("comb16")
    whole = Scene.polygon(list(sc.points), sc.q, 200)
    assert windows_batched_critical(whole, 2).records() == [Marker(MARK_WHOLE)]


@pytest.mark.parametrize("name", sorted(BOUNDS))
def test_budget_is_linear_in_s(name):
    sc = fixtures.load("comb16")
    f = windows_batched_all if name == "batch-all" else windows_batched_critical
    c1, c2 = BOUNDS[name]
    for s in (1, 4, 16):
        meter = WorkspaceMeter(c1 * s + c2, strict=True)
        f(sc, s, engine=Engine(sc, meter))
        assert 0 < meter.peak_words <= c1 * s + c2


def test_tight_budget_raises():
    sc = fixtures.load("comb16")
    with pytest.raises(BudgetExceeded):
        windows_batched_all(sc, 2, engine=Engine(sc, WorkspaceMeter(20, strict=True)))


def test_trace_emits_arcs_and_windows():
    sc = fixtures.load("seg_layers")
    recs = windows_batched_all(sc, 4, trace=True).records()
    assert any(isinstance(r, Arc) for r in recs)
    assert window_set([r for r in recs if not isinstance(r, Arc)]) == oracle_window_set(sc)


def test_rejects_bad_s():
    with pytest.raises(ValueError):
        windows_batched_all(fixtures.load("poly_star8"), 0)
