import random

import pytest

from kvis.geom import DegenerateInput
from kvis.memory import ReadOnlyView, WorkspaceMeter, BudgetExceeded
from kvis.memory import ENTRY_WORDS
from kvis.selection import KeyedScan, NotEnoughElements, kth_smallest, s_smallest_above, select_in_place


def test_select_in_place():
    rng = random.Random(1)
    for _ in range(200):
        vals = rng.sample(range(1000), rng.randint(1, 60))
        buf = [(v, i) for i, v in enumerate(vals)]
        r = rng.randrange(len(buf))
        select_in_place(buf, 0, len(buf), r)
        assert buf[r][0] == sorted(vals)[r]
        assert all(b[0] < buf[r][0] for b in buf[:r]) and all(b[0] > buf[r][0] for b in buf[r + 1 :])


def test_s_smallest_above():
    arr = [9, 3, 7, 1, 8, 2]
    got = s_smallest_above(KeyedScan(ReadOnlyView(arr)), 2, 3)
    assert [k for k, _ in got] == [3, 7, 8]
    assert s_smallest_above(KeyedScan(ReadOnlyView(arr)), 9, 3) == []


def test_buffer_is_2s():
    m = WorkspaceMeter(2 * 4 * ENTRY_WORDS, strict=True)
    s_smallest_above(KeyedScan(ReadOnlyView(list(range(100)))), None, 4, m)
    assert m.peak_words == 2 * 4 * ENTRY_WORDS and m.current_words == 0
    with pytest.raises(BudgetExceeded):
        s_smallest_above(KeyedScan(ReadOnlyView([1, 2])), None, 5, WorkspaceMeter(10, strict=True))


def test_kth_passes():
    arr = list(range(50))[::-1]
    view = ReadOnlyView(arr)
    assert kth_smallest(KeyedScan(view), 17, 4)[0] == 16
    assert view.reads == 5 * 50


def test_key_function_skips_none():
    arr = [5, -1, 4, -2, 3]
    scan = KeyedScan(ReadOnlyView(arr), key=lambda x: x if x > 0 else None)
    assert kth_smallest(scan, 1, 1) == (3, 4)
    with pytest.raises(NotEnoughElements):
        kth_smallest(scan, 4, 2)


def test_ties_are_degenerate():
    with pytest.raises(DegenerateInput):
        s_smallest_above(KeyedScan(ReadOnlyView([1, 5, 5, 7])), None, 3)
