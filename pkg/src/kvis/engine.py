"""Per-run access to the scene through the sweep kernels.

An :class:`Engine` binds one scene to one run's read counter and workspace
meter.  Every kernel pass credits its reads to the run's view and charges
its selection buffer to the meter for the duration of the pass.

Keys are plain ``(c, x, y, t)`` integer tuples as described in
:mod:`kvis._kernels_src`.
"""

from __future__ import annotations

import functools

from . import kernels
from .geom import DegenerateInput
from .memory import ENTRY_WORDS, ReadOnlyView, WorkspaceMeter

PYK = kernels.PY
NONCRIT, END, START = PYK.NONCRIT, PYK.END, PYK.START

LOW_KEY = (PYK.LOW_CLASS, 1, 0, 0)
HIGH_KEY = (PYK.HIGH_CLASS, 1, 0, 0)
BLOCK_FIRST = (0, 1, 1, 0)
BLOCK_SECOND = (0, 1, 1, 1)


def key_cmp(a, b) -> int:
    return PYK.key_cmp(a[0], a[1], a[2], a[3], b[0], b[1], b[2], b[3])


key_sort = functools.cmp_to_key(key_cmp)


def is_block(key) -> bool:
    """True for the entries of the ray's own vertex (ray parameter exactly 1)."""
    return key[0] == 0 and key[1] == key[2]


class Engine:
    def __init__(self, scene, meter: WorkspaceMeter | None = None, view: ReadOnlyView | None = None):
        self.scene = scene
        self.be = scene.backend()
        self.mod = self.be.mod
        self.meter = meter if meter is not None else WorkspaceMeter()
        self.view = view if view is not None else ReadOnlyView(scene.points)
        self.k = scene.k

    def _credit(self, reads, status):
        self.view.add_reads(int(reads))
        if status < 0:
            raise DegenerateInput("weak general position violated on a sweep ray")

    # -- vertices ---------------------------------------------------------------

    def classify(self, i: int) -> int:
        be = self.be
        cl = int(self.mod.vclass(be.X, be.Y, be.NX, be.PV, i))
        self._credit(3, cl)
        return cl

    def angle_key(self, i: int) -> tuple:
        x, y = self.scene.X[i], self.scene.Y[i]
        return (PYK.half_plane(x, y), x, y, 0)

    def scan_critical(self):
        be = self.be
        c, best, reads, st = self.mod.scan_critical(be.X, be.Y, be.NX, be.PV)
        self._credit(reads, st)
        return int(c), int(best)

    def vertices_after(self, key, s: int, crit_only: bool) -> list:
        be = self.be
        bufs = be.buffers(2 * s)
        self.meter.charge(2 * s * ENTRY_WORDS, "vertex batch")
        try:
            cnt, reads, st = self.mod.select_vertices(
                be.X, be.Y, be.NX, be.PV, key[0], key[1], key[2], s, 1 if crit_only else 0, *bufs
            )
            self._credit(reads, st)
            return [int(bufs[4][i]) for i in range(int(cnt))]
        finally:
            self.meter.charge(-2 * s * ENTRY_WORDS, "vertex batch")

    # -- one ray ------------------------------------------------------------------

    def _select(self, vi, cv, key, s, sgn):
        be = self.be
        bufs = be.buffers(2 * s)
        self.meter.charge(2 * s * ENTRY_WORDS, "ray batch")
        try:
            cnt, reads, st = self.mod.select_entries(
                be.X, be.Y, be.NX, be.PV, vi, cv, key[0], key[1], key[2], key[3], s, sgn, *bufs
            )
            self._credit(reads, st)
            BC, BX, BY, BT, BE = bufs
            return [((int(BC[i]), int(BX[i]), int(BY[i]), int(BT[i])), int(BE[i])) for i in range(int(cnt))]
        finally:
            self.meter.charge(-2 * s * ENTRY_WORDS, "ray batch")

    def above(self, vi, cv, key, s=1) -> list:
        """The ``s`` entries just above ``key`` on ray q->v_vi, ascending."""
        return self._select(vi, cv, key, s, 1)

    def below(self, vi, cv, key, s=1) -> list:
        """The ``s`` entries just below ``key``, nearest first."""
        return self._select(vi, cv, key, s, -1)

    def count_below(self, vi, cv, key):
        be = self.be
        below, total, reads, st = self.mod.count_below(be.X, be.Y, be.NX, be.PV, vi, cv, key[0], key[1], key[2], key[3])
        self._credit(reads, st)
        return int(below), int(total)

    def edge_keys(self, vi, cv, j) -> list:
        """Keys contributed by edge ``j`` to ray q->v_vi (zero, one or two)."""
        s = self.scene
        cnt, den, num, tb = PYK.edge_entry(s.X, s.Y, s.nx, s.pv, vi, cv, j)
        self._credit(5, cnt)
        return [(0, den, num, tb + r) for r in range(cnt)]

    def chain_walk(self, edge, from_vi, to_vi, to_cv) -> int:
        be = self.be
        e, reads, st = self.mod.chain_walk(be.X, be.Y, be.NX, be.PV, edge, from_vi, to_vi, to_cv)
        self._credit(reads, st)
        return int(e)

    def kth(self, vi, cv, r: int, s: int = 1):
        """Entry of rank ``r`` by ceil(r/s) batched passes, or None."""
        floor = LOW_KEY
        remaining = r
        while True:
            batch = self.above(vi, cv, floor, s)
            if remaining <= len(batch):
                return batch[remaining - 1]
            if len(batch) < s:
                return None
            remaining -= s
            floor = batch[-1][0]
