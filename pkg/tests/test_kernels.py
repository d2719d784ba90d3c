"""The numba and NumPy kernels must agree; the env flag must select NumPy."""
import os
import subprocess
import sys

import numpy as np
import pytest

from transrad import kernels
from transrad._accel import ENV_FLAG, HAVE_NUMBA
from transrad.samplers import random_pair

from conftest import rng_for

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")


def _pair(seed, n=2):
    T, A = random_pair(n, rng_for(seed))
    return np.ascontiguousarray(T), np.ascontiguousarray(A)


@needs_numba
@pytest.mark.parametrize("tilde", [False, True])
def test_grid_kernels_agree(tilde):
    alphas = np.linspace(0, np.pi / 2, 61)
    betas = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    for seed in range(5):
        T, A = _pair(seed)
        a = kernels.grid_max_deviation_numpy(T, A, alphas, betas, tilde, 1e-12)
        b = kernels.grid_max_deviation_numba(T, A, alphas, betas, tilde, 1e-12)
        assert a[0] == pytest.approx(b[0], rel=1e-13, abs=1e-15)
        assert a[3] == b[3]


@needs_numba
@pytest.mark.parametrize("tilde", [False, True])
def test_batch_kernels_agree(tilde):
    rng = rng_for(9)
    T, A = _pair(3, n=4)
    F = rng.standard_normal((300, 4)) + 1j * rng.standard_normal((300, 4))
    F /= np.linalg.norm(F, axis=1)[:, None]
    la, va, oka = kernels.batch_deviation_numpy(T, A, F, tilde, 1e-12)
    lb, vb, okb = kernels.batch_deviation_numba(T, A, F, tilde, 1e-12)
    np.testing.assert_array_equal(oka, okb)
    np.testing.assert_allclose(la[oka], lb[okb], rtol=1e-12, atol=1e-14)
    np.testing.assert_allclose(va[oka], vb[okb], rtol=1e-12, atol=1e-14)


def test_batch_kernel_excludes_kernel_vectors():
    T = np.eye(2, dtype=complex)
    A = np.diag([1.0, 0.0]).astype(complex)
    F = np.array([[1, 0], [0, 1]], dtype=complex)
    _, _, ok = kernels.batch_deviation(T, A, F, False, 1e-12)
    assert ok.tolist() == [True, False]


@needs_numba
def test_welzl_kernels_agree():
    rng = rng_for(4)
    for size in (1, 2, 3, 10, 500):
        x, y = rng.standard_normal(size), rng.standard_normal(size)
        a = kernels.welzl_numpy(x, y, 1e-12)
        b = kernels.welzl_numba(x, y, 1e-12)
        np.testing.assert_allclose(a[:3], b[:3], rtol=1e-12, atol=1e-14)


@needs_numba
def test_welzl_collinear_agree():
    x = np.array([0.0, 1.0, 2.0, 3.0, 1.5])
    y = np.zeros(5)
    a = kernels.welzl_numpy(x, y, 1e-12)
    b = kernels.welzl_numba(x, y, 1e-12)
    np.testing.assert_allclose(a[:3], [1.5, 0, 1.5])
    np.testing.assert_allclose(b[:3], [1.5, 0, 1.5])


@pytest.mark.parametrize("value,expected", [("1", "False"), ("0", str(HAVE_NUMBA))])
def test_env_flag_selects_path(value, expected):
    env = dict(os.environ, **{ENV_FLAG: value})
    out = subprocess.run([sys.executable, "-c", "import transrad; print(transrad.USE_NUMBA)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == expected


def test_radius_identical_under_both_paths():
    code = ("import numpy as np, transrad as t\n"
            "T = np.array([[1, 2j], [0.5, -1]]); A = np.array([[2, 0.3], [0, 1]])\n"
            "p = t.validate_pair(T, A)\n"
            "print(repr(t.oracle_radius(p, cfg=t.OracleConfig(90, 90))))\n"
            "print(repr(t.enclosing_circle(t.sample_generalized_range(p, 300)).radius))\n")
    outs = []
    for value in ("1", "0"):
        env = dict(os.environ, **{ENV_FLAG: value})
        r = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                           check=True)
        outs.append([float(v) for v in r.stdout.split()])
    np.testing.assert_allclose(outs[0], outs[1], rtol=1e-12)
