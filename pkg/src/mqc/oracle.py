"""Exact references for small instances: ground sets and chain vote curves.

Enumeration walks all 2^n assignments in Gray-code order, applying one
single-flip energy delta per step, which keeps n = 24 (16.7M states)
tractable.  Accumulated float drift is handled by collecting candidates
with a loose slack and re-evaluating them exactly before thresholding.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .model import ENERGY_ATOL, IsingModel
from .topology import ChainSpec, gen_chain_model

__all__ = [
    "MAX_ENUM_QUBITS",
    "GroundSet",
    "exact_ground",
    "theoretical_vote_prob",
]

# Refuse exhaustive enumeration beyond this size: 2^24 is seconds of work,
# every extra bit doubles it.
MAX_ENUM_QUBITS = 24

# Candidate slack for the first Gray-code pass; far above any drift the
# incremental deltas can accumulate at n <= 24, far below real energy gaps.
_COLLECT_SLACK = 1e-6


@dataclass(frozen=True)
class GroundSet:
    """Exact minimum energy and every assignment attaining it.

    States are sorted by their bit code (bit i set means spin i is -1),
    so the listing is deterministic.
    """

    energy: float
    states: np.ndarray  # (k, n) int8 matrix, one ground state per row

    @property
    def degeneracy(self) -> int:
        return int(self.states.shape[0])


def _decode(codes: np.ndarray, n: int) -> np.ndarray:
    bits = (codes[:, None] >> np.arange(n, dtype=np.int64)[None, :]) & 1
    return (1 - 2 * bits).astype(np.int8)


def exact_ground(model: IsingModel, max_qubits: int = MAX_ENUM_QUBITS) -> GroundSet:
    """Enumerate all assignments; return the minimum energy and its states."""
    n = model.num_qubits
    if n > max_qubits:
        raise ValueError(
            f"refusing exhaustive enumeration of {n} qubits (cap {max_qubits})"
        )
    indptr, nbr, dat = model._adjacency
    lin = model._lin
    e_up = model.energy(np.ones(n, dtype=np.int8))

    rough_min = _kernels.gray_min_energy(lin, indptr, nbr, dat, n, e_up)
    threshold = rough_min + _COLLECT_SLACK
    count = _kernels.gray_collect(lin, indptr, nbr, dat, n, e_up, threshold,
                                  np.empty(0, dtype=np.int64))
    codes = np.empty(count, dtype=np.int64)
    _kernels.gray_collect(lin, indptr, nbr, dat, n, e_up, threshold, codes)

    states = _decode(np.sort(codes), n)
    exact = model.energies(states)
    ground_energy = float(exact.min())
    keep = exact <= ground_energy + ENERGY_ATOL
    states = states[keep]
    states.flags.writeable = False
    return GroundSet(energy=ground_energy, states=states)


def theoretical_vote_prob(
    chain_length: int,
    linear: float,
    coupling: float,
    max_qubits: int = MAX_ENUM_QUBITS,
) -> float:
    """Fraction of single-chain ground states whose majority vote is true.

    A state votes true when its +1 spins are at least as many as its -1
    spins (ties count as true).  Ground states are weighted uniformly.
    """
    if chain_length > max_qubits:
        raise ValueError(
            f"refusing exhaustive enumeration of {chain_length} qubits (cap {max_qubits})"
        )
    chain, _ = gen_chain_model(ChainSpec(chain_length, linear, coupling, count=1))
    ground = exact_ground(chain, max_qubits)
    votes = ground.states.sum(axis=1) >= 0
    return float(np.count_nonzero(votes)) / ground.degeneracy
