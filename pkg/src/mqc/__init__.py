"""Post-processing for populations of Ising/QUBO samples.

The core operation merges two candidate samples by flipping *tunnels* —
connected groups of disagreeing qubits — whenever the flip lowers the
energy, guaranteeing the merged sample is at least as good as both
inputs.  Tournament reduction applies this pairwise merge across a whole
population, leaving a single sample whose energy never exceeds the best
input.  Single-qubit greedy descent and exhaustive small-instance solvers
are included as baselines, plus seeded experiment drivers that emit CSV.
"""

from .model import (
    ENERGY_ATOL,
    IsingModel,
    QuboModel,
    as_bits,
    as_spins,
    bits_to_spins,
    ising_to_qubo,
    qubo_to_ising,
    spins_to_bits,
)
from .modelio import (
    ModelFormatError,
    SampleFormatError,
    load_model,
    load_samples,
    parse_model,
    parse_samples,
    save_model,
    save_samples,
    serialize_model,
    serialize_samples,
)
from .topology import (
    ChainSpec,
    ChimeraSpec,
    complete_edges,
    erdos_edges,
    gen_chain_model,
    gen_chimera_edges,
    gen_random_model,
)
from .samplers import (
    AnnealSchedule,
    SamplePopulation,
    inject_noise,
    population_from_samples,
    sample_sa,
    sample_uniform,
)
from .correction import (
    SQC_MAX_SWEEPS,
    TIE_EPSILON,
    DiffPartition,
    MergeReport,
    TournamentResult,
    Tunnel,
    aggregate_incremental,
    diff_partition,
    mqc_merge,
    sqc,
    sqc_population,
    tournament_aggregate,
    tunnel_decompose,
    tunnel_influence,
)
from .oracle import MAX_ENUM_QUBITS, GroundSet, exact_ground, theoretical_vote_prob
from .experiments import (
    ChainConfig,
    ChainCurvePoint,
    ChainExperimentResult,
    ChainGridPoint,
    ConvergenceRow,
    RandomCoeffConfig,
    RandomCoeffResult,
    experiment_chain,
    experiment_random_coeff,
    vote,
    write_chain_csv,
    write_convergence_csv,
)

__version__ = "0.1.0"
