"""Seeded random matrices for tests, benchmarks and sweeps."""
import numpy as np


def complex_gaussian(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unitary(n, rng):
    Q, R = np.linalg.qr(complex_gaussian(rng, (n, n)))
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_invertible(n, rng, sigma_floor=0.3):
    """Complex Gaussian matrix with singular values clipped below at ``sigma_floor``."""
    U, s, Vh = np.linalg.svd(complex_gaussian(rng, (n, n)))
    return (U * np.maximum(s, sigma_floor)) @ Vh


def random_pair(n, rng, sigma_floor=0.3):
    return complex_gaussian(rng, (n, n)), random_invertible(n, rng, sigma_floor)


def random_hermitian(n, rng, real=False):
    X = rng.standard_normal((n, n)) if real else complex_gaussian(rng, (n, n))
    return 0.5 * (X + X.conj().T)


def random_positive_definite(n, rng, spread=0.2):
    """``I + spread * H`` shifted so its smallest eigenvalue is at least 0.1."""
    A = np.eye(n) + spread * random_hermitian(n, rng)
    lo = np.linalg.eigvalsh(A)[0]
    if lo < 0.1:
        A = A + (0.1 - lo) * np.eye(n)
    return A


def random_normal(n, rng):
    U = random_unitary(n, rng)
    return (U * complex_gaussian(rng, n)) @ U.conj().T


def random_density(n, rng, rank=None):
    rank = n if rank is None else rank
    X = complex_gaussian(rng, (n, rank))
    rho = X @ X.conj().T
    return rho / np.trace(rho).real
