"""Sample correction: single-qubit descent, pairwise tunnel merging, tournaments.

Merging two samples A and B works on their disagreement set: the qubits
where they differ are split into *tunnels* (connected components under
nonzero couplers), each tunnel's influence on the energy relative to A is
computed, and every tunnel whose influence is positive is flipped as a
unit.  Flipping a tunnel with influence I changes the energy by exactly
-2*I, so the merged sample never lands above either input.

The canonical merge always starts from the first argument and leaves
zero-influence tunnels unflipped.  Starting from B instead can differ in
bits on zero-influence tunnels, but never in energy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .model import IsingModel, as_spins
from .samplers import SamplePopulation

__all__ = [
    "TIE_EPSILON",
    "SQC_MAX_SWEEPS",
    "DiffPartition",
    "Tunnel",
    "MergeReport",
    "TournamentResult",
    "sqc",
    "sqc_population",
    "diff_partition",
    "tunnel_decompose",
    "tunnel_influence",
    "mqc_merge",
    "tournament_aggregate",
    "aggregate_incremental",
]

# Influences within this epsilon of zero count as ties and are not flipped;
# well below it, symmetric constructions still classify as exact zeros.
TIE_EPSILON = 1e-12

# Greedy descent must reach a fixed point long before this many sweeps.
SQC_MAX_SWEEPS = 1000


@dataclass(frozen=True)
class DiffPartition:
    """Where two equal-length samples agree and where they differ."""

    num_qubits: int
    agree: np.ndarray  # sorted indices with equal spins
    differ: np.ndarray  # sorted indices with opposite spins

    def differ_mask(self) -> np.ndarray:
        mask = np.zeros(self.num_qubits, dtype=bool)
        mask[self.differ] = True
        return mask


@dataclass(frozen=True)
class Tunnel:
    """One connected component of the disagreement set, with its influence.

    ``influence`` is relative to the reference sample; flipping the whole
    tunnel changes the energy by -2*influence.
    """

    indices: np.ndarray
    influence: float
    flipped: bool


@dataclass(frozen=True)
class MergeReport:
    """Outcome of merging a sample pair, with per-tunnel records.

    Tunnel storage is columnar to stay small across long tournaments:
    ``diff_indices[k]`` belongs to tunnel ``tunnel_labels[k]``, and the
    per-tunnel arrays are indexed by label (labels are ordered by each
    tunnel's smallest qubit index).
    """

    merged: np.ndarray
    energy_a: float
    energy_b: float
    energy_merged: float
    diff_indices: np.ndarray = field(repr=False)
    tunnel_labels: np.ndarray = field(repr=False)
    influences: np.ndarray = field(repr=False)
    flipped: np.ndarray = field(repr=False)

    @property
    def num_tunnels(self) -> int:
        return int(self.influences.shape[0])

    @property
    def num_flipped(self) -> int:
        return int(np.count_nonzero(self.flipped))

    def tunnels(self) -> list[Tunnel]:
        order = np.argsort(self.tunnel_labels, kind="stable")
        bounds = np.searchsorted(self.tunnel_labels[order], np.arange(self.num_tunnels + 1))
        return [
            Tunnel(
                np.sort(self.diff_indices[order[bounds[k] : bounds[k + 1]]]),
                float(self.influences[k]),
                bool(self.flipped[k]),
            )
            for k in range(self.num_tunnels)
        ]


@dataclass(frozen=True)
class TournamentResult:
    """Final sample of a tournament plus every merge report, grouped by round."""

    final: np.ndarray
    final_energy: float
    rounds: list[list[MergeReport]]

    @property
    def num_rounds(self) -> int:
        return len(self.rounds)

    def reports(self):
        for round_reports in self.rounds:
            yield from round_reports


def sqc(model: IsingModel, sample, max_sweeps: int = SQC_MAX_SWEEPS) -> np.ndarray:
    """Greedy single-flip descent to a 1-flip-stable sample.

    Sweeps qubits in index order, flipping any qubit whose single-flip
    delta is negative, until a full sweep makes no flips.
    """
    out = as_spins(sample, model.num_qubits).copy()
    indptr, nbr, dat = model._adjacency
    used = _kernels.sqc_sweeps(model._lin, indptr, nbr, dat, out, max_sweeps)
    if used < 0:
        raise RuntimeError(f"descent did not stabilize within {max_sweeps} sweeps")
    return out


def sqc_population(model: IsingModel, pop: SamplePopulation,
                   max_sweeps: int = SQC_MAX_SWEEPS) -> SamplePopulation:
    """Apply :func:`sqc` to every sample of a population."""
    spins = pop.spins.copy()
    indptr, nbr, dat = model._adjacency
    counts = _kernels.sqc_batch(model._lin, indptr, nbr, dat, spins, max_sweeps)
    if np.any(counts < 0):
        bad = int(np.flatnonzero(counts < 0)[0])
        raise RuntimeError(f"sample {bad}: descent did not stabilize within {max_sweeps} sweeps")
    return SamplePopulation.from_spins(model, spins)


def diff_partition(a, b, num_qubits: int | None = None) -> DiffPartition:
    """Split indices into the agreement and disagreement sets of two samples."""
    a = as_spins(a, num_qubits)
    b = as_spins(b, a.shape[0])
    differ = a != b
    return DiffPartition(
        num_qubits=a.shape[0],
        agree=np.flatnonzero(~differ),
        differ=np.flatnonzero(differ),
    )


def _check_partition(model: IsingModel, part: DiffPartition) -> None:
    if part.num_qubits != model.num_qubits:
        raise ValueError(
            f"partition covers {part.num_qubits} qubits, model has {model.num_qubits}"
        )
    merged = np.concatenate([part.agree, part.differ])
    if merged.size != model.num_qubits or not np.array_equal(
        np.sort(merged), np.arange(model.num_qubits)
    ):
        raise ValueError("agree/differ sets must partition the qubit indices")


def tunnel_decompose(model: IsingModel, part: DiffPartition) -> list[np.ndarray]:
    """Connected components of the disagreement set under nonzero couplers.

    Components are pairwise disjoint, cover the disagreement set exactly,
    and are returned sorted by smallest member.
    """
    _check_partition(model, part)
    if part.differ.size == 0:
        return []
    eu, ev, ew = model._edges
    labels, count = _kernels.component_labels(
        model.num_qubits, eu, ev, ew, part.differ_mask()
    )
    groups = [[] for _ in range(count)]
    for i in part.differ:
        groups[labels[i]].append(i)
    return [np.asarray(g, dtype=np.int64) for g in groups]


def tunnel_influence(model: IsingModel, a, part: DiffPartition, tunnel) -> float:
    """Energy influence of a tunnel relative to reference sample ``a``.

    Sums the tunnel's linear terms under ``a`` plus its couplers into the
    agreement set.  Couplers internal to the disagreement set are excluded:
    they keep their value when the whole tunnel flips.
    """
    a = as_spins(a, model.num_qubits)
    _check_partition(model, part)
    t = np.unique(np.asarray(list(tunnel), dtype=np.int64))
    differ_mask = part.differ_mask()
    if t.size and (t[0] < 0 or t[-1] >= model.num_qubits or not differ_mask[t].all()):
        raise ValueError("tunnel must be a subset of the disagreement set")
    agree_mask = ~differ_mask

    indptr, nbr, dat = model._adjacency
    total = float(model._lin[t] @ a[t])
    for i in t:
        lo, hi = indptr[i], indptr[i + 1]
        js = nbr[lo:hi]
        total += float(a[i]) * float(dat[lo:hi] @ (a[js] * agree_mask[js]))
    return total


def mqc_merge(model: IsingModel, a, b, tie_epsilon: float = TIE_EPSILON) -> MergeReport:
    """Merge two samples: flip every positive-influence tunnel of ``a``.

    The result's energy is exactly energy(a) - 2 * (sum of flipped
    influences), and never exceeds min(energy(a), energy(b)) beyond
    rounding.
    """
    a = as_spins(a, model.num_qubits)
    b = as_spins(b, model.num_qubits)
    eu, ev, ew = model._edges
    merged, labels, influences, flipped = _kernels.merge_pair(
        model._lin, eu, ev, ew, a, b, tie_epsilon
    )
    merged.flags.writeable = False
    diff_indices = np.flatnonzero(labels >= 0).astype(np.int32)
    return MergeReport(
        merged=merged,
        energy_a=model.energy(a),
        energy_b=model.energy(b),
        energy_merged=model.energy(merged),
        diff_indices=diff_indices,
        tunnel_labels=labels[diff_indices],
        influences=influences,
        flipped=flipped,
    )


def tournament_aggregate(
    model: IsingModel,
    pop: SamplePopulation,
    tie_epsilon: float = TIE_EPSILON,
    keep_reports: bool = True,
) -> TournamentResult:
    """Reduce a population to one sample by rounds of pairwise merging.

    Each round merges samples (1st, 2nd), (3rd, 4th), ...; an unpaired
    trailing sample advances unchanged.  The survivor's energy is at most
    the minimum input energy.
    """
    if len(pop) == 0:
        raise ValueError("population must contain at least one sample")
    if pop.model is not model:
        if pop.spins.shape[1] != model.num_qubits:
            raise ValueError("population does not match the model")

    current = [pop.spins[k] for k in range(len(pop))]
    eu, ev, ew = model._edges
    lin = model._lin
    rounds: list[list[MergeReport]] = []
    while len(current) > 1:
        round_reports: list[MergeReport] = []
        survivors = []
        for k in range(0, len(current) - 1, 2):
            a, b = current[k], current[k + 1]
            if keep_reports:
                report = mqc_merge(model, a, b, tie_epsilon)
                round_reports.append(report)
                survivors.append(report.merged)
            else:
                merged, _, _, _ = _kernels.merge_pair(lin, eu, ev, ew, a, b, tie_epsilon)
                survivors.append(merged)
        if len(current) % 2:
            survivors.append(current[-1])
        current = survivors
        rounds.append(round_reports)
    final = np.asarray(current[0], dtype=np.int8).copy()
    final.flags.writeable = False
    return TournamentResult(final=final, final_energy=model.energy(final), rounds=rounds)


def aggregate_incremental(model: IsingModel, prior, batch: SamplePopulation) -> np.ndarray:
    """Tournament over (prior sample + batch); prior of None means batch only.

    Feeding successive batches through this keeps the running sample's
    energy non-increasing, since the previous survivor re-enters each
    tournament.
    """
    if len(batch) == 0:
        raise ValueError("batch must contain at least one sample")
    if prior is None:
        pop = batch
    else:
        prior = as_spins(prior, model.num_qubits)
        spins = np.vstack([prior[None, :], batch.spins])
        energies = np.concatenate([[model.energy(prior)], batch.energies])
        pop = SamplePopulation(model, spins, energies)
    return tournament_aggregate(model, pop, keep_reports=False).final
