import numpy as np
import pytest

from transrad import OracleConfig, Variant, oracle_radius, radius, radius_tilde, validate_pair
from transrad.errors import NumericalRangeZero, SingularDirection, UnsupportedDimension
from transrad.radii import initial_vectors
from transrad.samplers import random_invertible, random_pair

from conftest import D4, D_12, D_PM, I2, JORDAN, rng_for

# hand value: 9p(1-p)/(2-p)^2 is maximal at p = 2/3, giving 9/8
TILDE_PM_12 = 3 / (2 * np.sqrt(2))


def test_radius_zero_when_T_equals_A():
    A = random_invertible(3, rng_for(1))
    assert radius(validate_pair(A, A)).value == pytest.approx(0, abs=1e-12)


def test_radius_normal_diag4():
    r = radius(validate_pair(D4, np.eye(4)))
    assert r.value == pytest.approx(1.0, abs=1e-9)


def test_radius_jordan(jordan_pair):
    r = radius(jordan_pair)
    assert r.value == pytest.approx(1.0, abs=1e-12)
    assert abs(abs(r.maximizer[1]) - 1) < 1e-9
    assert r.converged and r.stationary_residual < 1e-12


def test_radius_singular_raises():
    with pytest.raises(SingularDirection):
        radius(validate_pair(JORDAN, np.diag([1.0, 0.0])))


def test_radius_deterministic():
    T, A = random_pair(4, rng_for(5))
    p = validate_pair(T, A)
    a, b = radius(p, seed=3), radius(p, seed=3)
    assert a.value == b.value
    np.testing.assert_array_equal(a.maximizer, b.maximizer)


def test_radius_maximizer_gauge(jordan_pair):
    f = radius(jordan_pair).maximizer
    k = np.flatnonzero(np.abs(f) > 1e-10)[0]
    assert f[k].imag == 0 and f[k].real > 0


def test_initial_vectors_cover_basis():
    p = validate_pair(D_PM, I2)
    vs = initial_vectors(p, 4, 0)
    assert len(vs) == 2 + 1 + 4
    np.testing.assert_allclose(vs[0], [1, 0])


def test_radius_tilde_examples(pm_12_pair):
    A = random_invertible(3, rng_for(2)) + 3 * np.eye(3)
    p = validate_pair(A, A)
    if p.wrange_dist_A > 0:
        assert radius_tilde(p).value == pytest.approx(0, abs=1e-12)
    t = radius_tilde(pm_12_pair)
    assert t.value == pytest.approx(TILDE_PM_12, abs=1e-7)
    assert t.value >= radius(pm_12_pair).value
    o = oracle_radius(pm_12_pair, Variant.TILDE)
    assert abs(o - TILDE_PM_12) < 1e-4


def test_radius_tilde_matches_standard_at_identity():
    rng = rng_for(8)
    for _ in range(3):
        T = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        p = validate_pair(T, np.eye(3))
        assert radius_tilde(p).value == pytest.approx(radius(p).value, abs=1e-6)


def test_radius_tilde_needs_zero_outside_range():
    with pytest.raises(NumericalRangeZero):
        radius_tilde(validate_pair(I2, D_PM))


def test_oracle_examples(jordan_pair, pm_pair):
    assert oracle_radius(validate_pair(I2, I2)) == pytest.approx(0, abs=1e-15)
    assert oracle_radius(jordan_pair) == pytest.approx(1.0, abs=1e-4)
    assert oracle_radius(pm_pair) == pytest.approx(1.0, abs=1e-4)


def test_oracle_is_lower_bound():
    for k in range(5):
        p = validate_pair(*random_pair(2, rng_for(40 + k)))
        assert oracle_radius(p, cfg=OracleConfig(90, 90)) <= radius(p).value + 1e-12


def test_oracle_errors():
    with pytest.raises(UnsupportedDimension):
        oracle_radius(validate_pair(np.eye(3), np.eye(3)))
    with pytest.raises(ValueError):
        OracleConfig(4, 720)
    with pytest.raises(NumericalRangeZero):
        oracle_radius(validate_pair(JORDAN, D_PM), Variant.TILDE)


def test_oracle_seed_shifts_grid(jordan_pair):
    a = oracle_radius(jordan_pair, cfg=OracleConfig(64, 64, seed=0))
    b = oracle_radius(jordan_pair, cfg=OracleConfig(64, 64, seed=7))
    assert a == pytest.approx(1.0, abs=1e-3) and b == pytest.approx(1.0, abs=1e-3)


def test_ill_conditioned_direction_reaches_global_maximum():
    # small sigma_min(A) shrinks the global basin; restarts driven by the
    # duality gap must still close it
    for k in range(30):
        r = radius(validate_pair(*random_pair(3, rng_for(300 + k), sigma_floor=0.1)))
        assert r.duality_gap <= 1e-6 * max(1, r.value)
