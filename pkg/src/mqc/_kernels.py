"""Numba-compiled inner loops for sweeps, merging, and exhaustive enumeration.

Everything here is deterministic: randomness (start states, update order,
acceptance draws) is generated by the caller and passed in as arrays.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def sqc_sweeps(lin, indptr, nbr, dat, spins, max_sweeps):
    """Greedy single-flip descent, sweeping qubits in index order.

    A qubit is flipped whenever its single-flip energy delta is strictly
    negative.  Returns the number of sweeps used (the last one makes no
    flips), or -1 if no fixed point was reached within ``max_sweeps``.
    Mutates ``spins`` in place.
    """
    n = spins.shape[0]
    for sweep in range(max_sweeps):
        changed = False
        for i in range(n):
            f = lin[i]
            for k in range(indptr[i], indptr[i + 1]):
                f += dat[k] * spins[nbr[k]]
            # flipping i changes the energy by -2 * s_i * f
            if spins[i] * f > 0.0:
                spins[i] = -spins[i]
                changed = True
        if not changed:
            return sweep + 1
    return -1


@njit(cache=True)
def sqc_batch(lin, indptr, nbr, dat, spins_matrix, max_sweeps):
    """Run :func:`sqc_sweeps` on every row of a sample matrix, in place."""
    m = spins_matrix.shape[0]
    counts = np.empty(m, np.int64)
    for r in range(m):
        counts[r] = sqc_sweeps(lin, indptr, nbr, dat, spins_matrix[r], max_sweeps)
    return counts


@njit(cache=True)
def anneal(lin, indptr, nbr, dat, spins, temps, shuffle_draws, accept_draws):
    """Metropolis single-spin-flip anneal over a geometric temperature ladder.

    One sweep visits every qubit once in a fresh random order built from
    ``shuffle_draws[t]`` (Fisher-Yates); ``accept_draws[t, k]`` decides the
    k-th Metropolis acceptance of sweep t.  Mutates ``spins`` in place.
    """
    n = spins.shape[0]
    sweeps = temps.shape[0]
    perm = np.empty(n, np.int64)
    for t in range(sweeps):
        temp = temps[t]
        for i in range(n):
            perm[i] = i
        for i in range(n - 1, 0, -1):
            j = int(shuffle_draws[t, i] * (i + 1))
            if j > i:
                j = i
            perm[i], perm[j] = perm[j], perm[i]
        for k in range(n):
            i = perm[k]
            f = lin[i]
            for p in range(indptr[i], indptr[i + 1]):
                f += dat[p] * spins[nbr[p]]
            d = -2.0 * spins[i] * f
            if d <= 0.0 or accept_draws[t, k] < np.exp(-d / temp):
                spins[i] = -spins[i]


@njit(cache=True)
def _find_root(parent, i):
    while parent[i] != i:
        parent[i] = parent[parent[i]]  # path halving
        i = parent[i]
    return i


@njit(cache=True)
def component_labels(num_qubits, eu, ev, ew, diff):
    """Connected components of the disagreement set under nonzero couplers.

    ``diff`` marks the disagreement set D.  Vertices are the members of D;
    edges are stored couplers with both endpoints in D and nonzero value.
    Returns per-qubit component labels (-1 outside D) numbered 0..k-1 in
    order of each component's smallest member, and the component count.
    """
    parent = np.arange(num_qubits, dtype=np.int64)
    for e in range(eu.shape[0]):
        if ew[e] != 0.0:
            i = eu[e]
            j = ev[e]
            if diff[i] and diff[j]:
                ri = _find_root(parent, i)
                rj = _find_root(parent, j)
                if ri != rj:
                    parent[rj] = ri
    labels = np.full(num_qubits, -1, np.int32)
    compact = np.full(num_qubits, -1, np.int32)
    count = 0
    for i in range(num_qubits):
        if diff[i]:
            r = _find_root(parent, i)
            if compact[r] < 0:
                compact[r] = count
                count += 1
            labels[i] = compact[r]
    return labels, count


@njit(cache=True)
def merge_pair(lin, eu, ev, ew, a, b, tie_eps):
    """Tunnel merge of samples ``a`` and ``b``, keeping ``a`` as the reference.

    Decomposes the disagreement set into tunnels, computes each tunnel's
    influence relative to ``a`` (linear terms plus couplers into the
    agreement set; intra-tunnel couplers cancel under a joint flip), and
    flips every tunnel whose influence exceeds ``tie_eps``.

    Returns (merged spins, per-qubit tunnel labels with -1 outside the
    disagreement set, per-tunnel influences, per-tunnel flip flags).
    """
    n = a.shape[0]
    diff = np.empty(n, np.bool_)
    for i in range(n):
        diff[i] = a[i] != b[i]

    labels, count = component_labels(n, eu, ev, ew, diff)

    influence = np.zeros(count, np.float64)
    for i in range(n):
        if diff[i]:
            influence[labels[i]] += lin[i] * a[i]
    for e in range(eu.shape[0]):
        w = ew[e]
        if w != 0.0:
            i = eu[e]
            j = ev[e]
            if diff[i] and not diff[j]:
                influence[labels[i]] += w * a[i] * a[j]
            elif diff[j] and not diff[i]:
                influence[labels[j]] += w * a[j] * a[i]

    flipped = influence > tie_eps
    merged = a.copy()
    for i in range(n):
        li = labels[i]
        if li >= 0 and flipped[li]:
            merged[i] = -a[i]
    return merged, labels, influence, flipped


@njit(cache=True)
def _trailing_zeros(m):
    i = 0
    while not (m >> i) & 1:
        i += 1
    return i


@njit(cache=True)
def gray_min_energy(lin, indptr, nbr, dat, n, energy_all_up):
    """Minimum energy over all 2^n states, visited in Gray-code order.

    Starts from the all '+1' state with known energy ``energy_all_up`` and
    applies one single-flip delta per step.
    """
    s = np.ones(n, np.int8)
    e = energy_all_up
    emin = e
    for m in range(1, 1 << n):
        i = _trailing_zeros(m)
        f = lin[i]
        for k in range(indptr[i], indptr[i + 1]):
            f += dat[k] * s[nbr[k]]
        e += -2.0 * s[i] * f
        s[i] = -s[i]
        if e < emin:
            emin = e
    return emin


@njit(cache=True)
def gray_collect(lin, indptr, nbr, dat, n, energy_all_up, threshold, out_codes):
    """Count states with energy <= threshold; fill ``out_codes`` with their Gray codes.

    Bit i set in a code means spin i is -1.  Pass a zero-length array to
    just count, then call again with a buffer of that size.
    """
    s = np.ones(n, np.int8)
    e = energy_all_up
    code = np.int64(0)
    count = 0
    if e <= threshold:
        if out_codes.shape[0] > 0:
            out_codes[0] = 0
        count = 1
    for m in range(1, 1 << n):
        i = _trailing_zeros(m)
        f = lin[i]
        for k in range(indptr[i], indptr[i + 1]):
            f += dat[k] * s[nbr[k]]
        e += -2.0 * s[i] * f
        s[i] = -s[i]
        code ^= np.int64(1) << i
        if e <= threshold:
            if count < out_codes.shape[0]:
                out_codes[count] = code
            count += 1
    return count
