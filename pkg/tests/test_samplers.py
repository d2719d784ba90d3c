import numpy as np

from transrad.samplers import (
    random_density, random_hermitian, random_invertible, random_normal, random_positive_definite,
    random_unitary,
)

from conftest import rng_for


def test_samplers_contracts():
    r = rng_for(0)
    U = random_unitary(4, r)
    np.testing.assert_allclose(U.conj().T @ U, np.eye(4), atol=1e-13)
    assert np.linalg.svd(random_invertible(4, r, 0.3), compute_uv=False)[-1] >= 0.3 - 1e-12
    H = random_hermitian(3, r)
    np.testing.assert_array_equal(H, H.conj().T)
    assert np.isrealobj(random_hermitian(3, r, real=True))
    assert np.linalg.eigvalsh(random_positive_definite(3, r, spread=5.0))[0] >= 0.1 - 1e-12
    N = random_normal(3, r)
    np.testing.assert_allclose(N @ N.conj().T, N.conj().T @ N, atol=1e-12)
    rho = random_density(3, r, rank=1)
    assert abs(np.trace(rho) - 1) < 1e-14
    assert np.linalg.matrix_rank(rho, tol=1e-10) == 1


def test_samplers_deterministic():
    a = random_invertible(3, rng_for(5))
    b = random_invertible(3, rng_for(5))
    np.testing.assert_array_equal(a, b)
