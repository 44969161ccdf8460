import os
import subprocess
import sys

import pytest

from kvis import kernels
from kvis.engine import BLOCK_FIRST, HIGH_KEY, Engine
from kvis.generate import random_scene
from kvis.scene import Scene

pytestmark = pytest.mark.skipif(kernels.JIT is None, reason="numba disabled or missing")


def _twins():
    sc = random_scene(11, 60, "random-simple", 2)
    py = Scene.polygon(list(sc.points), sc.q, 2).use_python_kernels()
    return sc, py


def test_backends_selected():
    sc, py = _twins()
    assert sc.backend().compiled and not py.backend().compiled


def test_kernel_answers_match():
    sc, py = _twins()
    a, b = Engine(sc), Engine(py)
    assert a.scan_critical() == b.scan_critical()
    for i in range(sc.n):
        ca, cb = a.classify(i), b.classify(i)
        assert ca == cb
        assert a.count_below(i, ca, HIGH_KEY) == b.count_below(i, cb, HIGH_KEY)
        assert a.above(i, ca, BLOCK_FIRST, 3) == b.above(i, cb, BLOCK_FIRST, 3)
    assert a.view.reads == b.view.reads


def test_env_flag_disables_numba():
    code = "from kvis import kernels; print(kernels.JIT is None)"
    env = dict(os.environ, KVIS_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "True"
