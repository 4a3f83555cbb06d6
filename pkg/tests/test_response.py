import numpy as np
import pytest

from schrodsim.errors import GridMismatch, NonUniformGrid, PreparationFailure
from schrodsim.lindblad import random_density_matrix
from schrodsim.liouville import SIGMA_X, SIGMA_Z, devectorize, vectorize
from schrodsim.response import (
    ResponseSeries,
    chi_circuit,
    chi_dense,
    chi_schrod,
    closed_form_chi,
    commutator_perturbation,
    dominant_frequency,
    error_metric,
)
from schrodsim.schrod import make_grid

TIMES = np.linspace(0.0, 10.0, 201)


def test_commutator_perturbation_examples(worked_example):
    v = worked_example["perturbation"]
    out = v.superop @ worked_example["rho_eq"]
    assert np.allclose(out, np.array([0, -1j, 1j, 0]), atol=1e-12)

    identity_drive = commutator_perturbation(np.eye(2, dtype=complex))
    assert np.max(np.abs(identity_drive.superop)) <= 1e-12

    z_drive = commutator_perturbation(SIGMA_Z)
    assert np.max(np.abs(z_drive.superop @ worked_example["rho_eq"])) <= 1e-12


def test_commutator_perturbation_action_on_random_states(rng):
    p = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    v = commutator_perturbation(p)
    for _ in range(20):
        rho = random_density_matrix(rng, 2).matrix
        direct = -1j * (p @ rho - rho @ p)
        assert np.max(np.abs(devectorize(v.superop @ vectorize(rho)) - direct)) <= 1e-12


def test_chi_dense_matches_derived_closed_form(worked_example):
    series = chi_dense(worked_example["liouvillian"], worked_example["observable"],
                       worked_example["perturbation"], worked_example["rho_eq"], TIMES)
    reference = closed_form_chi(TIMES, worked_example["omega0"], worked_example["gamma"])
    assert np.max(np.abs(series.values - reference.values)) <= 1e-9
    assert abs(series.values[0]) <= 1e-12  # chi(0) = 0 for this model


def test_chi_dense_undamped_limit(worked_example):
    from schrodsim.lindblad import amplitude_damping_model, build_liouvillian

    liouvillian = build_liouvillian(amplitude_damping_model(2.0, 0.0))
    # gamma = 0 leaves every diagonal state steady; drive the ground state
    rho_eq = vectorize(np.array([[0, 0], [0, 1]], dtype=complex))
    series = chi_dense(liouvillian, SIGMA_X, commutator_perturbation(SIGMA_X), rho_eq, TIMES)
    assert np.max(np.abs(series.values - (-2.0 * np.sin(2.0 * TIMES)))) <= 1e-9


def test_chi_schrod_converges_to_dense(worked_example):
    grid = make_grid(4000.0, 16384, 1.0)
    dense = chi_dense(worked_example["liouvillian"], worked_example["observable"],
                      worked_example["perturbation"], worked_example["rho_eq"], TIMES)
    quad = chi_schrod(worked_example["pair"], worked_example["observable"],
                      worked_example["perturbation"], worked_example["rho_eq"], TIMES, grid)
    assert error_metric(quad, dense)["max_abs"] <= 1e-3


def test_chi_schrod_coarse_grid_degrades_gracefully(worked_example):
    dense = chi_dense(worked_example["liouvillian"], worked_example["observable"],
                      worked_example["perturbation"], worked_example["rho_eq"], TIMES)
    coarse = chi_schrod(worked_example["pair"], worked_example["observable"],
                        worked_example["perturbation"], worked_example["rho_eq"], TIMES,
                        make_grid(100.0, 16, 1.0))
    fine = chi_schrod(worked_example["pair"], worked_example["observable"],
                      worked_example["perturbation"], worked_example["rho_eq"], TIMES,
                      make_grid(400.0, 2048, 1.0))
    assert error_metric(coarse, dense)["max_abs"] > error_metric(fine, dense)["max_abs"]
    assert abs(fine.values[0]) <= 1e-2  # t = 0 within quadrature tolerance


def test_chi_circuit_identity_with_schrod(worked_example):
    grid = make_grid(60.0, 48, 1.0)
    times = TIMES[::10]
    quad = chi_schrod(worked_example["pair"], worked_example["observable"],
                      worked_example["perturbation"], worked_example["rho_eq"], times, grid)
    circ = chi_circuit(worked_example["pair"], worked_example["observable"],
                       worked_example["perturbation"], worked_example["rho_eq"], times, grid)
    assert np.max(np.abs(circ.values - quad.values)) <= 1e-10
    assert circ.method == "circuit"


def test_chi_circuit_shot_noise_within_binomial_band(worked_example):
    grid = make_grid(60.0, 32, 1.0)
    times = np.linspace(0.0, 10.0, 11)
    exact = chi_circuit(worked_example["pair"], worked_example["observable"],
                        worked_example["perturbation"], worked_example["rho_eq"], times, grid)
    shots = 10**5
    sampled = chi_circuit(worked_example["pair"], worked_example["observable"],
                          worked_example["perturbation"], worked_example["rho_eq"], times, grid,
                          shots=shots, seed=5)
    # variance bound: |w_j|^2 * (1 - bias^2)/shots <= |w_j|^2 / shots per part
    scale = 2.0 * np.sqrt(2.0)  # n_init * n_obs for this setup
    sigma = scale * np.sqrt(np.sum(np.abs(grid.weights) ** 2) / shots)
    assert np.max(np.abs(sampled.values - exact.values)) <= 5 * sigma


def test_chi_circuit_preparation_failure(worked_example):
    with pytest.raises(PreparationFailure):
        chi_circuit(worked_example["pair"], worked_example["observable"],
                    commutator_perturbation(SIGMA_Z), worked_example["rho_eq"],
                    TIMES[:3], make_grid(10.0, 4, 1.0))


def test_reality_of_dense_response(worked_example):
    series = chi_dense(worked_example["liouvillian"], worked_example["observable"],
                       worked_example["perturbation"], worked_example["rho_eq"], TIMES)
    assert np.max(np.abs(series.values.imag)) <= 1e-9


def test_linearity_in_perturbation_and_observable(worked_example, rng):
    liouvillian = worked_example["liouvillian"]
    rho_eq = worked_example["rho_eq"]
    times = TIMES[::20]
    p1 = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    p2 = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    alpha = 1.3

    from schrodsim.response import Perturbation

    combined = Perturbation(superop=commutator_perturbation(p1).superop
                            + alpha * commutator_perturbation(p2).superop)
    lhs = chi_dense(liouvillian, a, combined, rho_eq, times).values
    rhs = (chi_dense(liouvillian, a, commutator_perturbation(p1), rho_eq, times).values
           + alpha * chi_dense(liouvillian, a, commutator_perturbation(p2), rho_eq, times).values)
    assert np.max(np.abs(lhs - rhs)) <= 1e-10

    a2 = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    lhs = chi_dense(liouvillian, a + alpha * a2, commutator_perturbation(p1), rho_eq, times).values
    rhs = (chi_dense(liouvillian, a, commutator_perturbation(p1), rho_eq, times).values
           + alpha * chi_dense(liouvillian, a2, commutator_perturbation(p1), rho_eq, times).values)
    assert np.max(np.abs(lhs - rhs)) <= 1e-10


def test_causality_rejects_negative_times(worked_example):
    with pytest.raises(ValueError):
        chi_dense(worked_example["liouvillian"], worked_example["observable"],
                  worked_example["perturbation"], worked_example["rho_eq"], [-1.0, 0.0])


def test_dominant_frequency_recovers_oscillation():
    series = closed_form_chi(TIMES, 2.0, 0.2)
    bin_width = 2 * np.pi / (TIMES.size * (TIMES[1] - TIMES[0]))
    assert abs(dominant_frequency(series) - 2.0) <= bin_width


def test_dominant_frequency_flat_series():
    series = ResponseSeries(times=TIMES, values=np.full(TIMES.size, 0.7 + 0j), method="dense")
    assert dominant_frequency(series) == 0.0


def test_dominant_frequency_grid_requirements():
    with pytest.raises(NonUniformGrid):
        dominant_frequency(ResponseSeries(times=np.array([0.0, 1.0, 2.0]),
                                          values=np.zeros(3, dtype=complex), method="dense"))
    uneven = np.array([0.0, 1.0, 2.0, 3.0, 4.5, 5.0, 6.0, 7.0, 8.0])
    with pytest.raises(NonUniformGrid):
        dominant_frequency(ResponseSeries(times=uneven, values=np.zeros(9, dtype=complex),
                                          method="dense"))


def test_error_metric_examples():
    base = closed_form_chi(TIMES, 2.0, 0.2)
    assert error_metric(base, base) == {"max_abs": 0.0, "rms": 0.0}
    shifted = ResponseSeries(times=TIMES, values=base.values + 0.25, method="dense")
    metrics = error_metric(shifted, base)
    assert metrics["max_abs"] == pytest.approx(0.25, abs=1e-12)
    assert metrics["rms"] == pytest.approx(0.25, abs=1e-12)
    with pytest.raises(GridMismatch):
        error_metric(base, closed_form_chi(TIMES[:-1], 2.0, 0.2))


def test_series_validation():
    with pytest.raises(ValueError):
        ResponseSeries(times=np.array([0.0, 0.0, 1.0]), values=np.zeros(3, dtype=complex),
                       method="dense")
