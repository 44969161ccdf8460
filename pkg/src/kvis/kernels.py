"""Backend selection for the scalar kernels.

Two copies of :mod:`kvis._kernels_src` exist side by side.  ``PY`` runs the
bodies as ordinary Python on arbitrary-precision ints.  ``JIT`` compiles
every function with :func:`numba.njit`; it is exact only while coordinates
(relative to the query point) stay within ``INT64_COORD_LIMIT`` in absolute
value, which keeps every intermediate product below 2**62.

Set ``KVIS_NO_NUMBA=1`` to force the Python bodies everywhere.
"""

from __future__ import annotations

import importlib.util
import os
import sys
import types

import numpy as np

INT64_COORD_LIMIT = 1 << 14

_SRC = os.path.join(os.path.dirname(__file__), "_kernels_src.py")

_PUBLIC = (
    "vclass",
    "edge_entry",
    "select_entries",
    "count_below",
    "select_vertices",
    "scan_critical",
    "chain_walk",
    "segment_crossings",
    "first_bad_pair",
    "key_cmp",
    "half_plane",
    "alloc",
)


def _load(name: str) -> types.ModuleType:
    mspec = importlib.util.spec_from_file_location(name, _SRC)
    mod = importlib.util.module_from_spec(mspec)
    # registered so numba's on-disk cache can resolve the module by name
    sys.modules[name] = mod
    mspec.loader.exec_module(mod)
    return mod


PY = _load("kvis._kern_py")


def numba_disabled() -> bool:
    return os.environ.get("KVIS_NO_NUMBA", "").strip() not in ("", "0")


def _build_jit() -> types.ModuleType | None:
    try:
        import numba
    except ImportError:  # pragma: no cover - numba is a declared dependency
        return None
    mod = _load("kvis._kern_jit")

    def alloc(size):
        return np.zeros(size, np.int64)

    mod.alloc = alloc
    for name, obj in list(vars(mod).items()):
        if isinstance(obj, types.FunctionType) and obj.__module__ == mod.__name__:
            setattr(mod, name, numba.njit(cache=True)(obj))
    return mod


JIT = None if numba_disabled() else _build_jit()


def fits_int64(max_abs_coord: int) -> bool:
    return max_abs_coord <= INT64_COORD_LIMIT


class Backend:
    """Kernel functions bound to one scene's integer arrays."""

    def __init__(self, X, Y, NX, PV, compiled: bool):
        self.compiled = compiled
        mod = JIT if compiled else PY
        self.mod = mod
        if compiled:
            self.X = np.asarray(X, dtype=np.int64)
            self.Y = np.asarray(Y, dtype=np.int64)
            self.NX = np.asarray(NX, dtype=np.int64)
            self.PV = np.asarray(PV, dtype=np.int64)
        else:
            self.X, self.Y, self.NX, self.PV = list(X), list(Y), list(NX), list(PV)
        self._bufcap = 0
        self._bufs = None

    def buffers(self, cap: int):
        if cap > self._bufcap:
            self._bufcap = max(cap, 2 * self._bufcap)
            a = self.mod.alloc
            self._bufs = tuple(a(self._bufcap) for _ in range(5))
        return self._bufs


def make_backend(X, Y, NX, PV, max_abs: int, prefer_compiled: bool = True) -> Backend:
    compiled = prefer_compiled and JIT is not None and fits_int64(max_abs)
    return Backend(X, Y, NX, PV, compiled)
