"""Independent reference implementations used to cross-check the library.

Everything here is deliberately naive (pure Python, itertools, dicts) so a
bug in the library's numpy/numba fast paths cannot hide in the reference.
"""

import itertools

import numpy as np


def naive_energy(model, sample) -> float:
    """Direct term-by-term objective evaluation from the coefficient dicts."""
    total = model.offset
    for i, a in model.linear.items():
        total += a * int(sample[i])
    for (i, j), b in model.quadratic.items():
        total += b * int(sample[i]) * int(sample[j])
    return total


def brute_force_ground(model, tol=1e-9):
    """Minimum energy and all attaining spin tuples, by full enumeration."""
    n = model.num_qubits
    best = None
    per_state = []
    for state in itertools.product((-1, 1), repeat=n):
        e = naive_energy(model, state)
        per_state.append((state, e))
        if best is None or e < best:
            best = e
    states = [s for s, e in per_state if e <= best + tol]
    return best, states


def reference_components(members, quadratic):
    """Connected components of ``members`` under nonzero couplers, via BFS.

    Returns a list of frozensets, sorted by smallest member.
    """
    members = set(int(i) for i in members)
    adjacency = {i: set() for i in members}
    for (i, j), b in quadratic.items():
        if b != 0.0 and i in members and j in members:
            adjacency[i].add(j)
            adjacency[j].add(i)
    seen = set()
    components = []
    for start in sorted(members):
        if start in seen:
            continue
        frontier = [start]
        component = set()
        while frontier:
            node = frontier.pop()
            if node in component:
                continue
            component.add(node)
            frontier.extend(adjacency[node] - component)
        seen |= component
        components.append(frozenset(component))
    return components


def random_dense_model(rng, num_qubits, density=1.0, offset=0.0):
    """Random all-pairs model with the given coupler keep probability."""
    from mqc import IsingModel

    linear = {i: float(rng.uniform(-2, 2)) for i in range(num_qubits)}
    quadratic = {}
    for i in range(num_qubits):
        for j in range(i + 1, num_qubits):
            if rng.random() < density:
                quadratic[(i, j)] = float(rng.uniform(-1, 1))
    return IsingModel(num_qubits, linear, quadratic, offset)


def random_spins(rng, shape):
    return rng.choice(np.array([-1, 1], dtype=np.int8), size=shape)
