"""Classical sample generators standing in for annealing hardware.

Every sampler is a pure function of (model, parameters, seed).  Simulated
annealing spawns one PCG64 substream per sample from the root seed, so the
population is identical whether anneals run sequentially or concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .model import ENERGY_ATOL, IsingModel

__all__ = [
    "AnnealSchedule",
    "SamplePopulation",
    "sample_uniform",
    "sample_sa",
    "inject_noise",
    "population_from_samples",
]


@dataclass(frozen=True)
class AnnealSchedule:
    """Metropolis sweep count and geometric temperature ladder endpoints."""

    sweeps: int = 100
    t_initial: float = 3.0
    t_final: float = 0.1

    def __post_init__(self):
        if self.sweeps < 1:
            raise ValueError(f"sweeps must be >= 1, got {self.sweeps}")
        if self.t_initial <= 0 or self.t_final <= 0:
            raise ValueError("temperatures must be positive")
        if self.t_final > self.t_initial:
            raise ValueError(
                f"t_final {self.t_final} must not exceed t_initial {self.t_initial}"
            )

    def temperatures(self) -> np.ndarray:
        return np.geomspace(self.t_initial, self.t_final, self.sweeps)


@dataclass(frozen=True)
class SamplePopulation:
    """An ordered batch of samples with their energies cached.

    ``spins`` is a (count, num_qubits) int8 matrix, one sample per row,
    and ``energies[k]`` always equals the model energy of row k.
    """

    model: IsingModel
    spins: np.ndarray
    energies: np.ndarray = field(repr=False)

    @classmethod
    def from_spins(cls, model: IsingModel, spins) -> "SamplePopulation":
        spins = np.atleast_2d(np.asarray(spins, dtype=np.int8)).copy()
        if spins.shape[1] != model.num_qubits:
            raise ValueError(
                f"samples have {spins.shape[1]} spins, model has {model.num_qubits} qubits"
            )
        if not np.all(np.abs(spins) == 1):
            raise ValueError("spins must be -1 or +1")
        spins.flags.writeable = False
        energies = model.energies(spins)
        energies.flags.writeable = False
        return cls(model, spins, energies)

    def __len__(self) -> int:
        return self.spins.shape[0]

    def sample(self, k: int) -> np.ndarray:
        return self.spins[k]

    @property
    def best_index(self) -> int:
        return int(np.argmin(self.energies))

    @property
    def best_energy(self) -> float:
        return float(self.energies.min())

    def subset(self, stop: int) -> "SamplePopulation":
        """The population's first ``stop`` samples, order preserved."""
        if not 1 <= stop <= len(self):
            raise ValueError(f"subset size {stop} out of range [1, {len(self)}]")
        return SamplePopulation(self.model, self.spins[:stop], self.energies[:stop])

    def verify_energies(self) -> bool:
        return bool(
            np.allclose(self.energies, self.model.energies(self.spins), atol=ENERGY_ATOL)
        )


def sample_uniform(model: IsingModel, count: int, seed) -> SamplePopulation:
    """Each spin independently ±1 with probability 1/2."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    rng = np.random.default_rng(seed)
    spins = rng.integers(0, 2, size=(count, model.num_qubits), dtype=np.int8) * 2 - 1
    return SamplePopulation.from_spins(model, spins)


def sample_sa(
    model: IsingModel,
    count: int,
    seed,
    schedule: AnnealSchedule | None = None,
) -> SamplePopulation:
    """Independent Metropolis single-spin-flip anneals from uniform starts.

    Per sample, in substream order: the start state, then the per-sweep
    shuffle draws, then the per-sweep acceptance draws.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if schedule is None:
        schedule = AnnealSchedule()
    n = model.num_qubits
    temps = schedule.temperatures()
    indptr, nbr, dat = model._adjacency
    lin = model._lin

    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    spins = np.empty((count, n), dtype=np.int8)
    for k, child in enumerate(seed.spawn(count)):
        rng = np.random.default_rng(child)
        row = rng.integers(0, 2, size=n, dtype=np.int8) * 2 - 1
        shuffle_draws = rng.random((schedule.sweeps, n))
        accept_draws = rng.random((schedule.sweeps, n))
        _kernels.anneal(lin, indptr, nbr, dat, row, temps, shuffle_draws, accept_draws)
        spins[k] = row
    return SamplePopulation.from_spins(model, spins)


def inject_noise(pop: SamplePopulation, flip_probability: float, seed) -> SamplePopulation:
    """Negate each spin of each sample independently with the given probability."""
    if not 0.0 <= flip_probability <= 1.0:
        raise ValueError(f"flip_probability must be in [0, 1], got {flip_probability}")
    rng = np.random.default_rng(seed)
    flip = rng.random(pop.spins.shape) < flip_probability
    spins = np.where(flip, -pop.spins, pop.spins).astype(np.int8)
    return SamplePopulation.from_spins(pop.model, spins)


def population_from_samples(model: IsingModel, samples) -> SamplePopulation:
    """Validate raw spin rows (e.g. from a samples file) into a population."""
    samples = np.atleast_2d(np.asarray(samples))
    if samples.size == 0:
        raise ValueError("population must contain at least one sample")
    return SamplePopulation.from_spins(model, samples)
