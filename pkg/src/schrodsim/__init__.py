"""Classical simulator for non-Hermitian linear response of Lindblad systems.

Three redundant computation paths for the response kernel chi(tau): a dense
Liouville-space matrix exponential, a unitary-dilation quadrature over a
Fourier-momentum grid, and a gate-level Hadamard-test circuit simulation
(ideal or with parametric noise), plus a sweep harness and CLI around them.
"""

__version__ = "0.1.0"

from .lindblad import (  # noqa: E402,F401
    LindbladModel,
    Liouvillian,
    amplitude_damping_model,
    build_liouvillian,
    closed_form_amplitude_damping,
    evolve_exact,
    steady_state,
)
from .liouville import (  # noqa: E402,F401
    DensityMatrix,
    devectorize,
    expectation,
    hs_inner,
    identity_vector,
    left_superop,
    right_superop,
    vectorize,
)
from .noise import DEFAULT_NOISE, NoiseModel  # noqa: E402,F401
from .response import (  # noqa: E402,F401
    Perturbation,
    ResponseSeries,
    chi_circuit,
    chi_dense,
    chi_schrod,
    closed_form_chi,
    commutator_perturbation,
    dominant_frequency,
    error_metric,
)
from .schrod import (  # noqa: E402,F401
    EtaGrid,
    HermitianPair,
    decompose,
    dilated_hamiltonian,
    make_grid,
    reconstruct,
    reconstruct_series,
    resource_estimate,
    unitary_propagator,
)
from .sweeps import SweepSpec, fit_loglinear, run_sweep  # noqa: E402,F401
