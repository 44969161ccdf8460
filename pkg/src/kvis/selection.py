"""Selection in a read-only sequence with O(s) words of workspace.

:func:`s_smallest_above` keeps a buffer of at most ``2s`` candidates: it is
filled, cut back to ``s`` at its median, and refilled ``s`` at a time, so a
single pass suffices.  :func:`kth_smallest` chains ``ceil(k/s)`` such passes,
each one starting above the largest key of the previous batch.

These run over any :class:`KeyedScan`.  The ray and angle sweeps use the
compiled equivalents in :mod:`kvis._kernels_src`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence

from .geom import DegenerateInput
from .memory import ENTRY_WORDS, WorkspaceMeter


class NotEnoughElements(ValueError):
    pass


@dataclass
class KeyedScan:
    """A read-only sequence plus a pure key function; ``None`` keys are skipped."""

    view: Sequence[Any]
    key: Callable[[Any], Any] = lambda x: x

    def __iter__(self):
        for i in range(len(self.view)):
            k = self.key(self.view[i])
            if k is not None:
                yield k, i


def _insertion_sort(buf, lo, hi):
    for i in range(lo + 1, hi):
        item = buf[i]
        j = i - 1
        while j >= lo and buf[j][0] > item[0]:
            buf[j + 1] = buf[j]
            j -= 1
        buf[j + 1] = item


def select_in_place(buf: list, lo: int, hi: int, rank: int) -> None:
    """Median-of-medians selection: afterwards ``buf[rank]`` holds the element
    of that rank within ``buf[lo:hi]``, smaller ones before it, larger after."""
    while hi - lo > 5:
        # gather medians of groups of five at the front
        m = lo
        for g in range(lo, hi, 5):
            e = min(g + 5, hi)
            _insertion_sort(buf, g, e)
            mid = g + (e - g - 1) // 2
            buf[m], buf[mid] = buf[mid], buf[m]
            m += 1
        select_in_place(buf, lo, m, lo + (m - lo - 1) // 2)
        pivot = buf[lo + (m - lo - 1) // 2][0]
        # three-way partition around the pivot key
        lt, i, gt = lo, lo, hi - 1
        while i <= gt:
            k = buf[i][0]
            if k < pivot:
                buf[lt], buf[i] = buf[i], buf[lt]
                lt += 1
                i += 1
            elif k > pivot:
                buf[gt], buf[i] = buf[i], buf[gt]
                gt -= 1
            else:
                i += 1
        if rank < lt:
            hi = lt
        elif rank > gt:
            lo = gt + 1
        else:
            return
    _insertion_sort(buf, lo, hi)


def _check_ties(buf):
    for a, b in zip(buf, buf[1:]):
        if a[0] == b[0]:
            raise DegenerateInput(f"tied keys at indices {a[1]} and {b[1]}")


def s_smallest_above(scan: KeyedScan, x: Optional[Any], s: int, meter: Optional[WorkspaceMeter] = None) -> list:
    """The ``s`` smallest ``(key, index)`` pairs with key strictly above ``x``."""
    if s < 1:
        raise ValueError("s must be at least 1")
    meter = meter if meter is not None else WorkspaceMeter()
    words = 2 * s * ENTRY_WORDS
    meter.charge(words, "s_smallest_above")
    try:
        buf: list = []
        for k, i in scan:
            if x is not None and not (k > x):
                continue
            buf.append((k, i))
            if len(buf) == 2 * s:
                select_in_place(buf, 0, len(buf), s - 1)
                cut = buf[s - 1][0]
                if any(e[0] == cut for e in buf[s:]):
                    raise DegenerateInput(f"tied keys at the selection cut ({cut!r})")
                del buf[s:]
        buf.sort(key=lambda e: e[0])
        _check_ties(buf)
        return buf[:s]
    finally:
        meter.charge(-words, "s_smallest_above")


def kth_smallest(scan: KeyedScan, k: int, s: int, meter: Optional[WorkspaceMeter] = None):
    """The k-th smallest ``(key, index)`` pair (1-based) via ceil(k/s) passes."""
    if k < 1:
        raise NotEnoughElements("k must be at least 1")
    meter = meter if meter is not None else WorkspaceMeter()
    floor = None
    remaining = k
    with meter.hold(ENTRY_WORDS + 2, "kth_smallest"):
        while True:
            batch = s_smallest_above(scan, floor, s, meter)
            if remaining <= len(batch):
                return batch[remaining - 1]
            if len(batch) < s:
                raise NotEnoughElements(f"only {k - remaining + len(batch)} keyed elements, asked for rank {k}")
            remaining -= s
            floor = batch[-1][0]
