import numpy as np
import pytest

from transrad import (
    minimal_translation, radius, stampfli_inequality_check, translation_radius_equality,
    validate_pair,
)
from transrad.errors import SingularDirection
from transrad.samplers import random_invertible, random_pair

from conftest import D_PM, I2, JORDAN, rng_for


def test_multiple_of_A():
    A = random_invertible(3, rng_for(4))
    mu = 0.7 - 1.2j
    tr = minimal_translation(validate_pair(mu * A, A))
    assert tr.lambda0 == pytest.approx(mu, abs=1e-7)
    assert tr.min_norm == pytest.approx(0, abs=1e-7)


def test_diag_2_0():
    tr = minimal_translation(validate_pair(np.diag([2.0, 0.0]), I2))
    assert tr.min_norm == pytest.approx(1.0, abs=1e-9)
    # phi is flat along the bisector direction, so lambda0 is only sqrt(eps)-accurate
    assert tr.lambda0 == pytest.approx(1.0, abs=1e-6)


def test_jordan(jordan_pair):
    tr = minimal_translation(jordan_pair)
    assert abs(tr.lambda0) < 1e-9
    assert tr.min_norm == pytest.approx(1.0, abs=1e-12)
    assert tr.probe_gap <= 0


def test_jordan_norm_formula():
    # ||J - lam I||^2 = |lam|^2 + 1/2 + sqrt(|lam|^2 + 1/4)
    for lam in [0.3, 1j, -0.5 + 0.2j]:
        a = abs(lam) ** 2
        assert np.linalg.norm(JORDAN - lam * I2, 2) ** 2 == pytest.approx(a + 0.5 + np.sqrt(a + 0.25))


def test_singular_raises():
    with pytest.raises(SingularDirection):
        minimal_translation(validate_pair(JORDAN, np.diag([0.0, 1.0])))


def test_zero_T():
    tr = minimal_translation(validate_pair(np.zeros((2, 2)), I2))
    assert tr.lambda0 == 0 and tr.min_norm == 0


def test_equality_examples(jordan_pair):
    p = validate_pair(I2, I2)
    assert translation_radius_equality(p, radius(p)) < 1e-12
    assert translation_radius_equality(jordan_pair, radius(jordan_pair)) < 1e-12


def test_equality_random_4x4():
    for k in range(50):
        p = validate_pair(*random_pair(4, rng_for(500 + k)))
        r = radius(p)
        assert translation_radius_equality(p, r) <= 1e-5 * max(1, r.value)


def test_probe_gap_nonpositive():
    for k in range(10):
        tr = minimal_translation(validate_pair(*random_pair(3, rng_for(70 + k))))
        assert tr.probe_gap <= 1e-12 * max(1, tr.min_norm)


def test_stampfli_examples():
    assert stampfli_inequality_check(np.eye(2))
    assert stampfli_inequality_check(D_PM)
    assert stampfli_inequality_check(JORDAN, trials=200)


def test_stampfli_random():
    rng = rng_for(9)
    for _ in range(5):
        T = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        assert stampfli_inequality_check(T, trials=100)
