"""Quantum transmission line with cavity memory: populations, channels, capacities."""
from .capacity import (
    ForgetfulnessFit,
    RatePoint,
    SteadyStateOptimum,
    binary_entropy,
    cavity_trajectory,
    forgetfulness_probe,
    memoryless_quantum_capacity,
    optimize_steady_state_input,
    private_rate_report,
    r_check,
    rate_sweep,
    steady_state_coherent_information,
)
from .cavity import (
    ChannelParams,
    channel_use_populations,
    damp_populations,
    damp_populations_ode_oracle,
    fock,
    jc_population_update,
    mean_photon_number,
    populations,
    stationary_populations,
    steady_state,
)
from .channel import (
    JCBlockRotation,
    amplitude_damping_output,
    coherent_information_single_use,
    entropy_exchange,
    jc_unitary_blocks,
    joint_output_with_reference,
    single_use_output,
)
from .core import QubitInput, trace_distance, validate_density_matrix, von_neumann_entropy
from .errors import (
    DimensionMismatch,
    DomainError,
    FitDegenerate,
    NoConvergence,
    NotHermitian,
    NotPSD,
    NotUnitTrace,
    TruncationOverflow,
)

__version__ = "0.1.0"
