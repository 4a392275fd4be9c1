import os
import subprocess
import sys

import numpy as np
import pytest

from elcauchy import _kernels

needs_numba = pytest.mark.skipif(_kernels.numba_kernels is None, reason="numba not installed")


def random_inputs(n, seed=0):
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(2, n))
    u = rng.normal(size=(2, n))
    w = rng.uniform(0, 1, n)
    return g[0], g[1], u[0], u[1], w


@needs_numba
@pytest.mark.parametrize("name", ["weighted_product_sum", "tilde_kernel_sum"])
@pytest.mark.parametrize("alpha,beta", [(1.0, 0.0), (5.0, 3.0), (0.3, -1.0)])
def test_numba_matches_numpy(name, alpha, beta):
    args = random_inputs(10_000)
    a = _kernels.numpy_kernels[name](*args, alpha, beta)
    b = _kernels.numba_kernels[name](*args, alpha, beta)
    scale = np.sum(np.abs(args[4])) * 10
    assert abs(a[0] - b[0]) <= 1e-12 * scale and abs(a[1] - b[1]) <= 1e-12 * scale


def test_broadcasting():
    g = np.ones((3, 4))
    re, im = _kernels.weighted_product_sum(g, 0.0 * g, 2.0, 0.0, np.full((3, 4), 0.5), 1.0, 0.0)
    assert (re, im) == (12.0, 0.0)


def test_kernels_deterministic():
    args = random_inputs(4096, seed=3)
    first = _kernels.tilde_kernel_sum(*args, 2.0, 1.0)
    for _ in range(3):
        assert _kernels.tilde_kernel_sum(*args, 2.0, 1.0) == first


def _probe(env_value):
    env = dict(os.environ, ELCAUCHY_DISABLE_NUMBA=env_value)
    code = ("from elcauchy import _kernels;"
            "print(_kernels.USE_NUMBA, _kernels.weighted_product_sum.__name__)")
    proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return proc.stdout.split()


def test_env_flag_forces_numpy():
    use, name = _probe("1")
    assert use == "False" and name.endswith("_np")


@needs_numba
def test_default_uses_numba():
    use, name = _probe("0")
    assert use == "True" and name.endswith("_nb")
