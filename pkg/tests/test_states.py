import numpy as np
import pytest

from transrad import (
    DensityMatrix, radius, state_supremum, state_value, validate_pair, williams_certificate,
)
from transrad.errors import NotAState, StateOutsideP
from transrad.samplers import random_density, random_pair
from transrad.states import project_to_states, williams_left_side

from conftest import D4, D_PM, I2, JORDAN, rng_for


def test_pure_state_with_T_equal_A():
    A = np.array([[2, 1j], [0, 1]])
    assert state_value(validate_pair(A, A), DensityMatrix.pure([0.3, 0.4j])).value == \
        pytest.approx(0, abs=1e-15)


def test_jordan_state_values(jordan_pair):
    assert state_value(jordan_pair, np.eye(2) / 2).value == pytest.approx(0.5)
    assert state_value(jordan_pair, np.diag([0.0, 1.0])).value == pytest.approx(1.0)


def test_state_errors(jordan_pair):
    with pytest.raises(NotAState):
        state_value(jordan_pair, np.diag([0.7, 0.7]))
    with pytest.raises(NotAState):
        state_value(jordan_pair, np.diag([1.5, -0.5]))
    with pytest.raises(NotAState):
        state_value(jordan_pair, np.array([[0.5, 0.5], [0, 0.5]]))
    with pytest.raises(StateOutsideP):
        state_value(validate_pair(I2, np.diag([1.0, 0.0])), np.diag([0.0, 1.0]))


def test_projection_to_states():
    rng = rng_for(2)
    X = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    rho = project_to_states(X)
    w = np.linalg.eigvalsh(rho)
    assert w.min() >= -1e-15 and np.trace(rho).real == pytest.approx(1)
    r = random_density(4, rng)
    np.testing.assert_allclose(project_to_states(r), r, atol=1e-14)


def test_supremum_examples(jordan_pair):
    A = np.array([[2, 1j], [0, 1]])
    assert state_supremum(validate_pair(A, A)).value == pytest.approx(0, abs=1e-12)
    s = state_supremum(jordan_pair)
    assert s.value == pytest.approx(1.0, abs=1e-9)
    s = state_supremum(validate_pair(D4, np.eye(4)))
    assert s.value == pytest.approx(1.0, abs=5e-3)


def test_supremum_matches_radius_squared():
    for k in range(5):
        p = validate_pair(*random_pair(3, rng_for(60 + k)))
        r = radius(p)
        s = state_supremum(p, rad=r)
        assert abs(s.value - r.value ** 2) <= 1e-4 * max(1, r.value ** 2)


def test_williams_examples():
    ok, rho = williams_certificate(JORDAN)
    assert ok
    assert abs(rho.expect(JORDAN)) < 1e-12
    assert rho.expect(JORDAN.conj().T @ JORDAN).real == pytest.approx(1.0)
    ok, rho = williams_certificate(D_PM)
    assert ok and abs(rho.expect(D_PM)) < 1e-12
    assert williams_certificate(np.eye(2)) == (False, None)
    assert not williams_left_side(np.eye(2)) and williams_left_side(JORDAN)


def test_williams_after_pre_translation():
    from transrad import minimal_translation
    rng = rng_for(31)
    for n in (2, 3, 4):
        T = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        lam0 = minimal_translation(validate_pair(T, np.eye(n))).lambda0
        T = T - lam0 * np.eye(n)
        ok, rho = williams_certificate(T)
        assert ok
        assert abs(rho.expect(T)) <= 1e-6
        assert rho.expect(T.conj().T @ T).real >= np.linalg.norm(T, 2) ** 2 - 1e-6
