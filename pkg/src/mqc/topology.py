"""Problem-instance generators: Chimera lattices, chain models, random graphs.

All random draws come from ``numpy.random.default_rng`` (PCG64) seeded
explicitly, one stream per generated model, so instances are replayable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import (
    HARDWARE_LINEAR_RANGE,
    HARDWARE_QUADRATIC_RANGE,
    IsingModel,
)

__all__ = [
    "ChimeraSpec",
    "ChainSpec",
    "gen_chimera_edges",
    "gen_chain_model",
    "gen_random_model",
    "complete_edges",
    "erdos_edges",
]


@dataclass(frozen=True)
class ChimeraSpec:
    """An rows x cols grid of K_{shore,shore} bipartite cells.

    Each cell holds 2*shore qubits: the first ``shore`` form the left
    partition, the rest the right.  Left-shore qubits couple to the
    matching position in the cell below; right-shore qubits to the cell
    to the right.
    """

    rows: int
    cols: int
    shore: int

    def __post_init__(self):
        for name in ("rows", "cols", "shore"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1, got {getattr(self, name)}")

    @property
    def num_qubits(self) -> int:
        return self.rows * self.cols * 2 * self.shore


@dataclass(frozen=True)
class ChainSpec:
    """Disjoint linear chains acting as virtual qubits.

    Every chain qubit carries the same linear coefficient; every edge along
    a chain carries the same coupling.  Chains share no couplers.
    """

    length: int = 12
    linear: float = 0.0
    coupling: float = -1.0
    count: int = 1

    def __post_init__(self):
        if self.length < 1:
            raise ValueError(f"length must be >= 1, got {self.length}")
        if self.count < 1:
            raise ValueError(f"count must be >= 1, got {self.count}")

    @property
    def num_qubits(self) -> int:
        return self.length * self.count


def gen_chimera_edges(spec: ChimeraSpec) -> list[tuple[int, int]]:
    """Edge list of the Chimera graph described by ``spec``.

    Qubit indexing is row-major over cells; within a cell the ``shore``
    left-partition qubits precede the right-partition ones.  The edge
    count is rows*cols*shore^2 + shore*(rows*(cols-1) + cols*(rows-1)).
    """
    m, n, ell = spec.rows, spec.cols, spec.shore
    edges = []
    for r in range(m):
        for c in range(n):
            base = (r * n + c) * 2 * ell
            for p in range(ell):
                for q in range(ell):
                    edges.append((base + p, base + ell + q))
            if r + 1 < m:
                below = ((r + 1) * n + c) * 2 * ell
                for p in range(ell):
                    edges.append((base + p, below + p))
            if c + 1 < n:
                right = (r * n + c + 1) * 2 * ell
                for p in range(ell):
                    edges.append((base + ell + p, right + ell + p))
    edges.sort()
    return edges


def gen_chain_model(spec: ChainSpec) -> tuple[IsingModel, list[np.ndarray]]:
    """Build the multi-chain model and the per-chain qubit index map.

    Chain k occupies indices [k*length, (k+1)*length).  Coefficients are
    stored explicitly even when zero, so the chain structure stays visible
    in the model.
    """
    n = spec.num_qubits
    linear = {i: spec.linear for i in range(n)}
    quadratic = {}
    chains = []
    for k in range(spec.count):
        start = k * spec.length
        idx = np.arange(start, start + spec.length, dtype=np.int64)
        chains.append(idx)
        for i in range(start, start + spec.length - 1):
            quadratic[(i, i + 1)] = spec.coupling
    return IsingModel(n, linear, quadratic), chains


def complete_edges(num_qubits: int) -> list[tuple[int, int]]:
    if num_qubits < 1:
        raise ValueError(f"num_qubits must be >= 1, got {num_qubits}")
    return [(i, j) for i in range(num_qubits) for j in range(i + 1, num_qubits)]


def erdos_edges(num_qubits: int, edge_prob: float, seed) -> list[tuple[int, int]]:
    """G(n, p) random graph; each pair kept independently with probability p."""
    if num_qubits < 1:
        raise ValueError(f"num_qubits must be >= 1, got {num_qubits}")
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError(f"edge_prob must be in [0, 1], got {edge_prob}")
    pairs = complete_edges(num_qubits)
    rng = np.random.default_rng(seed)
    keep = rng.random(len(pairs)) < edge_prob
    return [pair for pair, k in zip(pairs, keep) if k]


def gen_random_model(
    num_qubits: int,
    edges,
    seed,
    linear_range: tuple[float, float] = HARDWARE_LINEAR_RANGE,
    quadratic_range: tuple[float, float] = HARDWARE_QUADRATIC_RANGE,
    hardware_range: bool = False,
) -> IsingModel:
    """Uniform random coefficients on every vertex and every edge.

    Draw order is fixed: all vertex coefficients in index order, then all
    edge coefficients in sorted-edge order, from a single PCG64 stream.
    With ``hardware_range`` set, the requested ranges must fit the
    hardware windows [-2, 2] (linear) and [-1, 1] (quadratic).
    """
    if num_qubits < 1:
        raise ValueError(f"cannot draw a model over an empty graph (num_qubits={num_qubits})")
    lo_a, hi_a = linear_range
    lo_b, hi_b = quadratic_range
    if lo_a > hi_a or lo_b > hi_b:
        raise ValueError("coefficient ranges must satisfy low <= high")
    if hardware_range:
        if lo_a < HARDWARE_LINEAR_RANGE[0] or hi_a > HARDWARE_LINEAR_RANGE[1]:
            raise ValueError(f"linear_range {linear_range} exceeds hardware window {HARDWARE_LINEAR_RANGE}")
        if lo_b < HARDWARE_QUADRATIC_RANGE[0] or hi_b > HARDWARE_QUADRATIC_RANGE[1]:
            raise ValueError(f"quadratic_range {quadratic_range} exceeds hardware window {HARDWARE_QUADRATIC_RANGE}")

    canon = sorted((i, j) if i < j else (j, i) for i, j in edges)
    rng = np.random.default_rng(seed)
    a = rng.uniform(lo_a, hi_a, size=num_qubits)
    b = rng.uniform(lo_b, hi_b, size=len(canon))
    linear = {i: float(a[i]) for i in range(num_qubits)}
    quadratic = {pair: float(b[k]) for k, pair in enumerate(canon)}
    return IsingModel(num_qubits, linear, quadratic)
