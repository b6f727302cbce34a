"""Desk-scale experiment drivers and their CSV emitters.

Two studies are provided:

* ``random-coeff`` — random Chimera models, a noisy-SA population per case,
  nested-subset aggregation; emits ``convergence.csv`` rows tracking how the
  aggregated energy approaches its final value as more samples are folded in.
* ``chain`` — a grid of (linear, coupling) values over models made of
  disjoint chains acting as virtual qubits; emits ``chain_curves.csv`` rows
  with the probability a virtual qubit votes true, per correction method,
  next to the exhaustively computed reference curve.

Both are pure functions of their config (all randomness flows from the
config seed), so reruns produce byte-identical CSV files.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass, field

import numpy as np

from .correction import sqc_population, tournament_aggregate, aggregate_incremental
from .model import ENERGY_ATOL, IsingModel
from .oracle import GroundSet, exact_ground
from .samplers import AnnealSchedule, SamplePopulation, inject_noise, sample_sa
from .topology import ChainSpec, ChimeraSpec, gen_chain_model, gen_chimera_edges, gen_random_model

__all__ = [
    "ConvergenceRow",
    "RandomCoeffConfig",
    "RandomCoeffResult",
    "experiment_random_coeff",
    "ChainCurvePoint",
    "ChainGridPoint",
    "ChainConfig",
    "ChainExperimentResult",
    "experiment_chain",
    "vote",
    "write_convergence_csv",
    "write_chain_csv",
    "DEFAULT_LINEAR_GRID",
    "DEFAULT_COUPLING_GRID",
]

# 41 linear values spanning the hardware window [-2, 2], 17 couplings
# spanning [-1, 1]; both grids include the exact endpoints and zero.
DEFAULT_LINEAR_GRID = tuple(float(x) for x in np.linspace(-2.0, 2.0, 41))
DEFAULT_COUPLING_GRID = tuple(float(x) for x in np.linspace(-1.0, 1.0, 17))

CONVERGENCE_HEADER = "case,N,raw_best,sqc_best,mqc_energy,improved,reached_final"
CHAIN_HEADER = "method,b,a,p_true"

_METHOD_ORDER = ("raw", "sqc", "mqc")


def vote(sample, chains) -> np.ndarray:
    """Majority vote per virtual qubit; a tie counts as true.

    ``chains`` maps each virtual qubit to the indices of its physical
    qubits; the index sets must not overlap.
    """
    sample = np.asarray(sample)
    seen = np.zeros(sample.shape[0], dtype=bool)
    out = np.empty(len(chains), dtype=bool)
    for k, chain in enumerate(chains):
        idx = np.asarray(chain, dtype=np.int64)
        if seen[idx].any():
            raise ValueError(f"chain {k} overlaps an earlier chain")
        seen[idx] = True
        out[k] = int(sample[idx].sum()) >= 0
    return out


# ---------------------------------------------------------------------------
# random-coefficient convergence study


@dataclass(frozen=True)
class ConvergenceRow:
    """One (case, subset size) line of the convergence table."""

    case: int
    subset_size: int
    raw_best: float
    sqc_best: float
    mqc_energy: float
    improved: bool  # aggregated energy strictly below the subset's raw best
    reached_final: bool  # no later subset improves on this energy


@dataclass(frozen=True)
class RandomCoeffConfig:
    seed: int
    cases: int = 20
    topology: ChimeraSpec = ChimeraSpec(3, 3, 4)
    samples_per_case: int = 2000
    batch_size: int = 200
    schedule: AnnealSchedule = AnnealSchedule()
    # Strong enough that the raw population usually sits above ground (so
    # correction has visible work), mild enough that merging still denoises.
    noise_probability: float = 0.1

    def __post_init__(self):
        if self.cases < 1:
            raise ValueError(f"cases must be >= 1, got {self.cases}")
        if self.samples_per_case < 1 or self.batch_size < 1:
            raise ValueError("samples_per_case and batch_size must be >= 1")
        if self.samples_per_case % self.batch_size:
            raise ValueError(
                f"batch_size {self.batch_size} must divide samples_per_case {self.samples_per_case}"
            )
        if not 0.0 <= self.noise_probability <= 1.0:
            raise ValueError(f"noise_probability must be in [0, 1], got {self.noise_probability}")

    @property
    def num_batches(self) -> int:
        return self.samples_per_case // self.batch_size


@dataclass(frozen=True)
class RandomCoeffResult:
    config: RandomCoeffConfig
    rows: list[ConvergenceRow]
    improved_cases: int
    first_final_counts: dict[int, int]  # subset size -> cases first reaching final there

    @property
    def improved_fraction(self) -> float:
        return self.improved_cases / self.config.cases

    def summary_lines(self) -> list[str]:
        lines = [
            f"cases with aggregated energy below best raw sample: "
            f"{self.improved_cases}/{self.config.cases} ({100.0 * self.improved_fraction:.1f}%)"
        ]
        for n in sorted(self.first_final_counts):
            lines.append(
                f"final energy first reached at N={n}: {self.first_final_counts[n]} cases"
            )
        return lines


def experiment_random_coeff(config: RandomCoeffConfig) -> RandomCoeffResult:
    """Run the convergence study: one random model per case, nested subsets."""
    edges = gen_chimera_edges(config.topology)
    n_qubits = config.topology.num_qubits
    case_seeds = np.random.SeedSequence(config.seed).spawn(config.cases)

    rows: list[ConvergenceRow] = []
    improved_cases = 0
    first_final_counts: dict[int, int] = {}

    for case, case_seed in enumerate(case_seeds):
        model_seed, sample_seed, noise_seed = case_seed.spawn(3)
        model = gen_random_model(n_qubits, edges, model_seed)
        pop = sample_sa(model, config.samples_per_case, sample_seed, config.schedule)
        if config.noise_probability > 0.0:
            pop = inject_noise(pop, config.noise_probability, noise_seed)

        raw_cummin = np.minimum.accumulate(pop.energies)
        sqc_cummin = np.minimum.accumulate(sqc_population(model, pop).energies)

        mqc_energies = []
        prior = None
        for b in range(config.num_batches):
            lo, hi = b * config.batch_size, (b + 1) * config.batch_size
            batch = SamplePopulation(model, pop.spins[lo:hi], pop.energies[lo:hi])
            prior = aggregate_incremental(model, prior, batch)
            mqc_energies.append(model.energy(prior))

        final_energy = mqc_energies[-1]
        first_final = None
        for b in range(config.num_batches):
            size = (b + 1) * config.batch_size
            mqc_e = mqc_energies[b]
            reached = mqc_e <= final_energy + ENERGY_ATOL
            if reached and first_final is None:
                first_final = size
            rows.append(
                ConvergenceRow(
                    case=case,
                    subset_size=size,
                    raw_best=float(raw_cummin[size - 1]),
                    sqc_best=float(sqc_cummin[size - 1]),
                    mqc_energy=mqc_e,
                    improved=mqc_e < raw_cummin[size - 1] - ENERGY_ATOL,
                    reached_final=reached,
                )
            )
        if final_energy < raw_cummin[-1] - ENERGY_ATOL:
            improved_cases += 1
        first_final_counts[first_final] = first_final_counts.get(first_final, 0) + 1

    return RandomCoeffResult(
        config=config,
        rows=rows,
        improved_cases=improved_cases,
        first_final_counts=first_final_counts,
    )


# ---------------------------------------------------------------------------
# chain / virtual-qubit vote-curve study


@dataclass(frozen=True)
class ChainCurvePoint:
    """One CSV row of the vote-probability curves."""

    method: str  # raw | sqc | mqc | theoretical
    coupling: float
    linear: float
    p_true: float


@dataclass(frozen=True)
class ChainGridPoint:
    """Everything measured at one (coupling, linear) grid point."""

    coupling: float
    linear: float
    p_theoretical: float
    chain_ground_energy: float
    ground_tie_votes: bool  # some ground state has equally many +1 and -1 spins
    p_raw: float | None = None
    p_sqc: float | None = None
    p_mqc: float | None = None
    mqc_chain_energies: np.ndarray | None = field(default=None, repr=False)


@dataclass(frozen=True)
class ChainConfig:
    seed: int
    chain_length: int = 12
    num_chains: int = 40
    linear_grid: tuple[float, ...] = DEFAULT_LINEAR_GRID
    coupling_grid: tuple[float, ...] = DEFAULT_COUPLING_GRID
    samples_per_point: int = 64
    schedule: AnnealSchedule = AnnealSchedule()
    methods: tuple[str, ...] = ("raw", "sqc", "mqc")

    def __post_init__(self):
        if not self.linear_grid or not self.coupling_grid:
            raise ValueError("coefficient grids must be nonempty")
        if self.samples_per_point < 1:
            raise ValueError(f"samples_per_point must be >= 1, got {self.samples_per_point}")
        bad = set(self.methods) - set(_METHOD_ORDER)
        if bad:
            raise ValueError(f"unknown methods: {sorted(bad)}")
        ChainSpec(self.chain_length, 0.0, 0.0, self.num_chains)  # bounds check


@dataclass(frozen=True)
class ChainExperimentResult:
    config: ChainConfig
    grid: list[ChainGridPoint]  # coupling-major, linear-minor

    def curve_rows(self) -> list[ChainCurvePoint]:
        """Rows in CSV order: per method, coupling-major, linear-minor."""
        rows = []
        for method in _METHOD_ORDER:
            if method not in self.config.methods:
                continue
            for point in self.grid:
                rows.append(
                    ChainCurvePoint(
                        method, point.coupling, point.linear,
                        getattr(point, f"p_{method}"),
                    )
                )
        rows.extend(
            ChainCurvePoint("theoretical", p.coupling, p.linear, p.p_theoretical)
            for p in self.grid
        )
        return rows


def _pooled_vote_fraction(spins: np.ndarray, chain_matrix: np.ndarray) -> float:
    """Fraction of true votes pooled over all samples and all chains."""
    votes = spins[:, chain_matrix].sum(axis=2) >= 0
    return float(np.count_nonzero(votes)) / votes.size


def experiment_chain(config: ChainConfig) -> ChainExperimentResult:
    """Run the vote-curve study over the configured coefficient grid."""
    num_points = len(config.coupling_grid) * len(config.linear_grid)
    point_seeds = iter(np.random.SeedSequence(config.seed).spawn(num_points))
    want_samples = bool(set(config.methods) & {"raw", "sqc", "mqc"})

    grid: list[ChainGridPoint] = []
    for coupling in config.coupling_grid:
        for linear in config.linear_grid:
            point_seed = next(point_seeds)
            single, _ = gen_chain_model(ChainSpec(config.chain_length, linear, coupling, 1))
            ground = exact_ground(single)
            spin_sums = ground.states.sum(axis=1)
            point = {
                "coupling": coupling,
                "linear": linear,
                "p_theoretical": float(np.count_nonzero(spin_sums >= 0)) / ground.degeneracy,
                "chain_ground_energy": ground.energy,
                "ground_tie_votes": bool(np.any(spin_sums == 0)),
            }

            if want_samples:
                spec = ChainSpec(config.chain_length, linear, coupling, config.num_chains)
                model, chains = gen_chain_model(spec)
                chain_matrix = np.vstack(chains)
                pop = sample_sa(model, config.samples_per_point, point_seed, config.schedule)
                if "raw" in config.methods:
                    point["p_raw"] = _pooled_vote_fraction(pop.spins, chain_matrix)
                if "sqc" in config.methods:
                    corrected = sqc_population(model, pop)
                    point["p_sqc"] = _pooled_vote_fraction(corrected.spins, chain_matrix)
                if "mqc" in config.methods:
                    result = tournament_aggregate(model, pop, keep_reports=False)
                    chain_spins = result.final[chain_matrix]
                    point["p_mqc"] = _pooled_vote_fraction(result.final[None, :], chain_matrix)
                    point["mqc_chain_energies"] = single.energies(chain_spins)

            grid.append(ChainGridPoint(**point))
    return ChainExperimentResult(config=config, grid=grid)


# ---------------------------------------------------------------------------
# CSV output


def _fmt(value: float) -> str:
    return "%.12g" % value


def _write_lines(lines: list[str], target) -> None:
    text = "\n".join(lines) + "\n"
    if hasattr(target, "write"):
        target.write(text)
    else:
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def write_convergence_csv(rows: list[ConvergenceRow], target: str | os.PathLike | io.TextIOBase) -> None:
    lines = [CONVERGENCE_HEADER]
    lines.extend(
        f"{r.case},{r.subset_size},{_fmt(r.raw_best)},{_fmt(r.sqc_best)},"
        f"{_fmt(r.mqc_energy)},{int(r.improved)},{int(r.reached_final)}"
        for r in rows
    )
    _write_lines(lines, target)


def write_chain_csv(points: list[ChainCurvePoint], target: str | os.PathLike | io.TextIOBase) -> None:
    lines = [CHAIN_HEADER]
    lines.extend(
        f"{p.method},{_fmt(p.coupling)},{_fmt(p.linear)},{_fmt(p.p_true)}"
        for p in points
    )
    _write_lines(lines, target)
