import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schrodsim.errors import DimMismatch, InvalidDensityMatrix, NonSquareDim
from schrodsim.lindblad import random_density_matrix
from schrodsim.liouville import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    devectorize,
    expectation,
    hs_inner,
    identity_vector,
    left_superop,
    right_superop,
    validate_density,
    vectorize,
)

GROUND = np.array([[0, 0], [0, 1]], dtype=complex)  # |0><0| in the (1,0) ordering
EXCITED = np.array([[1, 0], [0, 0]], dtype=complex)


def test_vectorize_ground_state():
    assert np.array_equal(vectorize(GROUND), np.array([0, 0, 0, 1], dtype=complex))


def test_vectorize_maximally_mixed():
    assert np.array_equal(vectorize(np.eye(2) / 2), np.array([0.5, 0, 0, 0.5]))


def test_vectorize_plus_state():
    rho = 0.5 * (np.eye(2) + SIGMA_X)
    assert np.array_equal(vectorize(rho), np.array([0.5, 0.5, 0.5, 0.5]))


def test_devectorize_examples():
    assert np.array_equal(devectorize([0, 0, 0, 1]), GROUND)
    assert np.array_equal(devectorize([1, 0, 0, -1]), SIGMA_Z)
    # vectorized -i[sigma_x, |0><0|]
    assert np.array_equal(devectorize([0, -1j, 1j, 0]), np.array([[0, -1j], [1j, 0]]))


def test_devectorize_rejects_non_square_length():
    with pytest.raises(NonSquareDim):
        devectorize(np.zeros(5))


def test_identity_vector():
    assert np.array_equal(identity_vector(2), np.array([1, 0, 0, 1], dtype=complex))
    assert np.array_equal(identity_vector(1), np.array([1], dtype=complex))
    v3 = identity_vector(3)
    assert v3[[0, 4, 8]].tolist() == [1, 1, 1]
    assert v3.sum() == 3
    assert np.vdot(v3, v3).real == 3  # norm^2 = d


def test_expectation_examples():
    assert expectation(SIGMA_Z, vectorize(GROUND)) == pytest.approx(-1)
    assert expectation(np.eye(2), vectorize(GROUND)) == pytest.approx(1)
    assert expectation(SIGMA_X, np.array([0, -1j, 1j, 0])) == pytest.approx(0)
    assert expectation(SIGMA_X, np.array([0, 1, 1, 0])) == pytest.approx(2)


def test_expectation_dim_mismatch():
    with pytest.raises(DimMismatch):
        expectation(np.eye(3), vectorize(GROUND))


def test_hs_inner_examples():
    assert hs_inner(np.eye(2), np.eye(2)) == pytest.approx(2)
    assert hs_inner(SIGMA_X, SIGMA_Y) == pytest.approx(0)
    assert hs_inner(SIGMA_X, SIGMA_X) == pytest.approx(2)
    with pytest.raises(DimMismatch):
        hs_inner(np.eye(2), np.eye(3))


def test_left_right_superop_examples():
    assert np.allclose(left_superop(np.eye(2)), np.eye(4))
    assert np.array_equal(left_superop(SIGMA_X) @ vectorize(GROUND), np.array([0, 1, 0, 0]))
    assert np.array_equal(right_superop(SIGMA_X) @ vectorize(GROUND), np.array([0, 0, 1, 0]))


@settings(max_examples=40, derandomize=True)
@given(d=st.sampled_from([2, 3, 4]), seed=st.integers(0, 2**31 - 1))
def test_round_trip_is_identity(d, seed):
    rho = random_density_matrix(np.random.default_rng(seed), d).matrix
    assert np.array_equal(devectorize(vectorize(rho)), rho)


def test_round_trip_200_random_matrices():
    rng = np.random.default_rng(1)
    for _ in range(200):
        d = int(rng.integers(2, 5))
        rho = random_density_matrix(rng, d).matrix
        assert np.array_equal(devectorize(vectorize(rho)), rho)


def test_trace_identity_random(rng):
    for _ in range(50):
        d = int(rng.integers(2, 5))
        a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        rho = random_density_matrix(rng, d).matrix
        direct = np.trace(a @ rho)
        assert abs(expectation(a, vectorize(rho)) - direct) <= 1e-12


def test_left_right_homomorphism(rng):
    for _ in range(20):
        d = int(rng.integers(2, 5))
        a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        b = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        assert np.max(np.abs(left_superop(a @ b) - left_superop(a) @ left_superop(b))) <= 1e-12
        assert np.max(np.abs(right_superop(a @ b) - right_superop(b) @ right_superop(a))) <= 1e-12


@settings(max_examples=30, derandomize=True)
@given(seed=st.integers(0, 2**31 - 1), d=st.sampled_from([2, 3]))
def test_hs_inner_self_nonnegative(seed, d):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    value = hs_inner(a, a)
    assert abs(value.imag) <= 1e-12
    assert value.real >= 0


def test_validate_density_accepts_good_state():
    validate_density(GROUND)
    validate_density(np.eye(2) / 2)


def test_validate_density_rejections():
    with pytest.raises(InvalidDensityMatrix):
        validate_density(np.array([[1, 0.5], [0.4, 0]]))  # not Hermitian
    with pytest.raises(InvalidDensityMatrix):
        validate_density(np.eye(2))  # trace 2
    with pytest.raises(InvalidDensityMatrix):
        validate_density(np.array([[1.5, 0], [0, -0.5]]))  # negative eigenvalue
