"""Ising and QUBO problem instances with sparse coefficients and energy evaluation.

A *sample* throughout this package is a plain 1-D ``numpy`` array of ``int8``
spins in ``{-1, +1}`` (Ising) or bits in ``{0, 1}`` (QUBO).  Models are
immutable after construction; every operation here is a pure function, safe
to call concurrently.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property

import numpy as np

#: Absolute tolerance for all energy comparisons in this package.
ENERGY_ATOL = 1e-9

#: Coefficient ranges accepted by annealing hardware (validated only on request).
HARDWARE_LINEAR_RANGE = (-2.0, 2.0)
HARDWARE_QUADRATIC_RANGE = (-1.0, 1.0)


def as_spins(values, num_qubits: int | None = None) -> np.ndarray:
    """Coerce ``values`` to a 1-D int8 spin vector with entries in {-1, +1}."""
    s = np.asarray(values)
    if s.ndim != 1:
        raise ValueError(f"sample must be one-dimensional, got shape {s.shape}")
    s = s.astype(np.int8, copy=False)
    if num_qubits is not None and s.shape[0] != num_qubits:
        raise ValueError(f"sample has {s.shape[0]} entries, model has {num_qubits} qubits")
    if s.size and not np.all(np.abs(s) == 1):
        raise ValueError("spins must be -1 or +1")
    return s


def as_bits(values, num_vars: int | None = None) -> np.ndarray:
    """Coerce ``values`` to a 1-D int8 bit vector with entries in {0, 1}."""
    x = np.asarray(values)
    if x.ndim != 1:
        raise ValueError(f"assignment must be one-dimensional, got shape {x.shape}")
    x = x.astype(np.int8, copy=False)
    if num_vars is not None and x.shape[0] != num_vars:
        raise ValueError(f"assignment has {x.shape[0]} entries, model has {num_vars} variables")
    if x.size and not np.all((x == 0) | (x == 1)):
        raise ValueError("bits must be 0 or 1")
    return x


def bits_to_spins(bits) -> np.ndarray:
    """Map binary variables to spins: 0 -> -1, 1 -> +1."""
    x = np.asarray(bits, dtype=np.int8)
    return (2 * x - 1).astype(np.int8)


def spins_to_bits(spins) -> np.ndarray:
    """Map spins to binary variables: -1 -> 0, +1 -> 1."""
    s = np.asarray(spins, dtype=np.int8)
    return ((s + 1) // 2).astype(np.int8)


def _validate_terms(num_vars, linear, quadratic, kind):
    """Common index/pair validation; returns canonicalized (linear, quadratic)."""
    if num_vars < 1:
        raise ValueError(f"{kind} needs at least one variable, got {num_vars}")
    lin = {}
    for i, a in linear.items():
        i = int(i)
        if not 0 <= i < num_vars:
            raise ValueError(f"linear index {i} out of range [0, {num_vars})")
        a = float(a)
        if not np.isfinite(a):
            raise ValueError(f"linear coefficient for {i} must be finite, got {a}")
        lin[i] = a
    quad = {}
    for (i, j), w in quadratic.items():
        i, j = int(i), int(j)
        if i == j:
            raise ValueError(f"self-coupler ({i}, {j}) is not allowed")
        if not (0 <= i < num_vars and 0 <= j < num_vars):
            raise ValueError(f"coupler ({i}, {j}) out of range [0, {num_vars})")
        key = (i, j) if i < j else (j, i)
        if key in quad:
            raise ValueError(f"duplicate coupler {key}")
        w = float(w)
        if not np.isfinite(w):
            raise ValueError(f"coupler {key} must be finite, got {w}")
        quad[key] = w
    return lin, quad


@dataclass(frozen=True)
class IsingModel:
    """Sparse Ising objective over spins ``q_i`` in {-1, +1}.

    The energy of a sample ``q`` is::

        E(q) = offset + sum_i linear[i] * q_i
                      + sum_{stored pairs {i,j}} quadratic[i,j] * q_i * q_j

    Couplers are undirected and each unordered pair contributes exactly once.

    Parameters
    ----------
    num_qubits : int
        Number of spin variables (>= 1).
    linear : dict[int, float]
        Per-qubit coefficients; absent indices contribute 0.
    quadratic : dict[tuple[int, int], float]
        Coupler coefficients keyed by unordered index pairs.  Keys are
        canonicalized to ``i < j``; duplicates and self-pairs are rejected.
    offset : float
        Constant energy term (nonzero typically after QUBO conversion).
    """

    num_qubits: int
    linear: dict[int, float]
    quadratic: dict[tuple[int, int], float]
    offset: float = 0.0

    def __post_init__(self):
        lin, quad = _validate_terms(self.num_qubits, self.linear, self.quadratic, "IsingModel")
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "quadratic", quad)
        object.__setattr__(self, "offset", float(self.offset))

    @property
    def num_couplers(self) -> int:
        return len(self.quadratic)

    def validate_hardware_range(self) -> None:
        """Raise if any coefficient is outside the hardware ranges a in [-2,2], b in [-1,1]."""
        lo, hi = HARDWARE_LINEAR_RANGE
        for i, a in self.linear.items():
            if not lo <= a <= hi:
                raise ValueError(f"linear coefficient a[{i}]={a} outside hardware range [{lo}, {hi}]")
        lo, hi = HARDWARE_QUADRATIC_RANGE
        for key, b in self.quadratic.items():
            if not lo <= b <= hi:
                raise ValueError(f"coupler b[{key}]={b} outside hardware range [{lo}, {hi}]")

    # Cached sparse views shared by all operations.  cached_property writes to
    # __dict__ directly, which is compatible with frozen dataclasses.

    @cached_property
    def _lin(self) -> np.ndarray:
        lin = np.zeros(self.num_qubits, dtype=np.float64)
        for i, a in self.linear.items():
            lin[i] = a
        return lin

    @cached_property
    def _edges(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Coupler arrays (u, v, w) with u < v, sorted by (u, v)."""
        if not self.quadratic:
            e = np.zeros(0, dtype=np.int32)
            return e, e.copy(), np.zeros(0, dtype=np.float64)
        pairs = sorted(self.quadratic)
        u = np.array([p[0] for p in pairs], dtype=np.int32)
        v = np.array([p[1] for p in pairs], dtype=np.int32)
        w = np.array([self.quadratic[p] for p in pairs], dtype=np.float64)
        return u, v, w

    @cached_property
    def _adjacency(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Symmetric CSR adjacency (indptr, neighbor indices, coupler values)."""
        u, v, w = self._edges
        n = self.num_qubits
        src = np.concatenate([u, v])
        dst = np.concatenate([v, u]).astype(np.int32)
        dat = np.concatenate([w, w])
        order = np.lexsort((dst, src))
        indptr = np.zeros(n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum(np.bincount(src, minlength=n))
        return indptr, dst[order], dat[order]

    def energy(self, sample) -> float:
        """Objective value of one sample."""
        s = as_spins(sample, self.num_qubits)
        u, v, w = self._edges
        e = self.offset + float(self._lin @ s)
        if w.size:
            e += float(w @ (s[u] * s[v]).astype(np.float64))
        return e

    def energies(self, samples: np.ndarray) -> np.ndarray:
        """Objective values for a (count, num_qubits) matrix of samples."""
        S = np.asarray(samples)
        if S.ndim != 2 or S.shape[1] != self.num_qubits:
            raise ValueError(f"expected shape (count, {self.num_qubits}), got {S.shape}")
        out = np.full(S.shape[0], self.offset, dtype=np.float64)
        out += S @ self._lin
        u, v, w = self._edges
        if w.size:
            # blockwise to keep the (count, couplers) product matrix small
            for start in range(0, S.shape[0], 4096):
                blk = S[start:start + 4096]
                out[start:start + 4096] += (blk[:, u] * blk[:, v]).astype(np.float64) @ w
        return out

    def delta_energy_flip(self, sample, indices) -> float:
        """Energy change from flipping the spins of an index set, without a full re-sum.

        Only the linear terms on ``indices`` and the couplers with exactly one
        endpoint in ``indices`` change sign.
        """
        s = as_spins(sample, self.num_qubits)
        idx = np.unique(np.fromiter(indices, dtype=np.int64))
        if idx.size == 0:
            return 0.0
        if idx[0] < 0 or idx[-1] >= self.num_qubits:
            raise IndexError(f"flip index out of range [0, {self.num_qubits})")
        in_set = np.zeros(self.num_qubits, dtype=bool)
        in_set[idx] = True
        indptr, nbr, dat = self._adjacency
        total = float(self._lin[idx] @ s[idx])
        for i in idx:
            lo, hi = indptr[i], indptr[i + 1]
            if hi > lo:
                js = nbr[lo:hi]
                total += float(s[i]) * float(dat[lo:hi] @ (s[js] * ~in_set[js]))
        return -2.0 * total


@dataclass(frozen=True)
class QuboModel:
    """Sparse QUBO objective over binary variables ``x_i`` in {0, 1}.

    Same layout as :class:`IsingModel`; the energy is
    ``offset + sum_i linear[i] x_i + sum_{stored pairs} quadratic[i,j] x_i x_j``.
    """

    num_vars: int
    linear: dict[int, float]
    quadratic: dict[tuple[int, int], float]
    offset: float = 0.0

    def __post_init__(self):
        lin, quad = _validate_terms(self.num_vars, self.linear, self.quadratic, "QuboModel")
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "quadratic", quad)
        object.__setattr__(self, "offset", float(self.offset))

    def energy(self, assignment) -> float:
        x = as_bits(assignment, self.num_vars)
        e = self.offset
        for i, c in self.linear.items():
            e += c * x[i]
        for (i, j), d in self.quadratic.items():
            e += d * x[i] * x[j]
        return float(e)


def qubo_to_ising(q: QuboModel) -> IsingModel:
    """Convert a QUBO to an energy-identical Ising model via x = (1 + s) / 2.

    For every binary assignment ``x`` and its spin image ``s`` (0 -> -1,
    1 -> +1) the two energies agree exactly; the offset absorbs constants.
    """
    a: dict[int, float] = defaultdict(float)
    b: dict[tuple[int, int], float] = {}
    offset = q.offset
    for i, c in q.linear.items():
        a[i] += c / 2.0
        offset += c / 2.0
    for (i, j), d in q.quadratic.items():
        b[(i, j)] = d / 4.0
        a[i] += d / 4.0
        a[j] += d / 4.0
        offset += d / 4.0
    return IsingModel(q.num_vars, dict(a), b, offset)


def ising_to_qubo(m: IsingModel) -> QuboModel:
    """Inverse of :func:`qubo_to_ising`, exact on every assignment."""
    c: dict[int, float] = defaultdict(float)
    d: dict[tuple[int, int], float] = {}
    offset = m.offset
    for i, a in m.linear.items():
        c[i] += 2.0 * a
        offset -= a
    for (i, j), b in m.quadratic.items():
        d[(i, j)] = 4.0 * b
        c[i] -= 2.0 * b
        c[j] -= 2.0 * b
        offset += b
    return QuboModel(m.num_qubits, dict(c), d, offset)
