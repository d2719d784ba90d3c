import numpy as np
import pytest

from transrad import (
    adjoint_duality_check, find_stationary, radius, selfadjoint_decomposition,
    stationarity_certificate, validate_pair,
)
from transrad.errors import (
    DegenerateMaximizer, DegenerateStationary, HypothesisViolated, KernelVector, NotSelfadjoint,
)
from transrad.samplers import random_hermitian, random_pair, random_positive_definite
from transrad.stationary import adjoint_coefficient, decomposition_scale

from conftest import D_12, D_PM, I2, JORDAN, rng_for

S = 1 / np.sqrt(2)


def test_certificate_diag_pm(pm_pair):
    c = stationarity_certificate(pm_pair, [S, S])
    assert abs(c.lam) < 1e-15 and c.h_norm == pytest.approx(1)
    assert c.residual < 1e-15 and c.is_stationary


def test_certificate_non_stationary(jordan_pair):
    c = stationarity_certificate(jordan_pair, [0.6, 0.8])
    assert not c.is_stationary and c.residual > 1e-3


def test_radius_maximizer_is_stationary():
    for k in range(10):
        p = validate_pair(*random_pair(3, rng_for(80 + k)))
        r = radius(p)
        c = stationarity_certificate(p, r.maximizer)
        assert c.residual <= p.tol.opt_tol * max(1, c.h_norm ** 2)


def test_find_stationary_fixed_point(pm_pair):
    c = find_stationary(pm_pair, [1, 0])
    assert c.residual == 0 and c.h_norm == 0
    np.testing.assert_allclose(np.abs(c.f), [1, 0])


def test_find_stationary_diag_pm(pm_pair):
    c = find_stationary(pm_pair, [0.72, 0.69])
    assert c.is_stationary
    assert min(abs(c.h_norm), abs(c.h_norm - 1)) < 1e-8


def test_find_stationary_random_selfadjoint():
    for k in range(10):
        rng = rng_for(120 + k)
        p = validate_pair(random_hermitian(3, rng), random_hermitian(3, rng) + 3 * np.eye(3))
        for s in range(10):
            start = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            assert find_stationary(p, start).residual <= 1e-7


def test_find_stationary_kernel_start():
    with pytest.raises(KernelVector):
        find_stationary(validate_pair(I2, np.diag([1.0, 0.0])), [0, 1])


def test_adjoint_examples(jordan_pair, pm_pair):
    for p in (jordan_pair, pm_pair):
        r = radius(p)
        assert adjoint_duality_check(p, r) < 1e-12
        assert adjoint_coefficient(p, r) == pytest.approx(np.conj(r.report.lam), abs=1e-12)


def test_adjoint_random_4x4():
    for k in range(30):
        p = validate_pair(*random_pair(4, rng_for(900 + k)))
        assert adjoint_duality_check(p, radius(p)) <= 1e-5


def test_adjoint_degenerate():
    p = validate_pair(D_12, D_12)
    with pytest.raises(DegenerateMaximizer):
        adjoint_duality_check(p, radius(p))


def test_decomposition_diag_pm(pm_pair):
    d = selfadjoint_decomposition(pm_pair, stationarity_certificate(pm_pair, [S, S]))
    np.testing.assert_allclose(d.g1, [2 * S, 0], atol=1e-15)
    np.testing.assert_allclose(d.g2, [0, -2 * S], atol=1e-15)
    assert d.reconstruction_error < 1e-15


def test_decomposition_commuting_diagonal():
    rng = rng_for(17)
    for _ in range(5):
        T = np.diag(rng.standard_normal(3))
        A = np.diag(rng.uniform(0.5, 2.0, 3))
        p = validate_pair(T, A)
        c = find_stationary(p, rng.standard_normal(3))
        if not c.is_stationary or c.h_norm < 1e-3:
            continue
        d = selfadjoint_decomposition(p, c)
        assert max(d.eigen_residuals) <= 1e-8 * decomposition_scale(p, d)
        assert d.reconstruction_error <= 1e-10


def test_decomposition_errors(jordan_pair):
    with pytest.raises(NotSelfadjoint):
        selfadjoint_decomposition(jordan_pair, stationarity_certificate(jordan_pair, [0, 1]))
    p = validate_pair(I2, I2)
    with pytest.raises(DegenerateStationary):
        selfadjoint_decomposition(p, stationarity_certificate(p, [S, S]))
    p = validate_pair(D_PM, D_12)
    with pytest.raises(HypothesisViolated):
        selfadjoint_decomposition(p, stationarity_certificate(p, [0.6, 0.8]))


def test_decomposition_complex_coefficient_rejected():
    # selfadjoint T and positive definite A: (Tf, Af) real fails for generic complex f,
    # but then f is also not stationary; only stationary vectors are accepted
    rng = rng_for(23)
    p = validate_pair(random_hermitian(3, rng), random_positive_definite(3, rng))
    c = stationarity_certificate(p, rng.standard_normal(3) + 1j * rng.standard_normal(3))
    with pytest.raises(HypothesisViolated):
        selfadjoint_decomposition(p, c)
