import numpy as np
import pytest

from schrodsim.lindblad import amplitude_damping_model, build_liouvillian, steady_state
from schrodsim.liouville import SIGMA_X
from schrodsim.response import commutator_perturbation
from schrodsim.schrod import decompose

OMEGA0 = 2.0
GAMMA = 0.2


@pytest.fixture(scope="session")
def worked_example():
    """The amplitude-damping setup used throughout: sigma_x drive and probe."""
    model = amplitude_damping_model(OMEGA0, GAMMA)
    liouvillian = build_liouvillian(model)
    return {
        "omega0": OMEGA0,
        "gamma": GAMMA,
        "model": model,
        "liouvillian": liouvillian,
        "pair": decompose(liouvillian),
        "rho_eq": steady_state(liouvillian),
        "observable": SIGMA_X,
        "perturbation": commutator_perturbation(SIGMA_X, "sigma_x"),
    }


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


def random_unitary(rng, d):
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(m)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_state(rng, d):
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)
