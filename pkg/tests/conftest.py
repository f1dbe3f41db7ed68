"""Shared fixtures and independent oracles.

The oracles deliberately avoid the package's bit-table machinery: states
are built by naive per-basis-state loops or dense matrix algebra, so route
agreement is evidence rather than tautology.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from hypermagic.hypergraph import Hypergraph, from_masks


def naive_f(g: Hypergraph, a: int) -> int:
    """Parity of the number of edges fully covered by basis string a."""
    return sum(1 for e in g.edges if a & e == e) % 2


def naive_component(g: Hypergraph, x: int, z: int) -> Fraction:
    """Signed component by direct summation, pure Python."""
    n = g.n
    total = 0
    for a in range(1 << n):
        s = naive_f(g, a) ^ naive_f(g, a ^ x) ^ (bin(a & z).count("1") % 2)
        total += 1 - 2 * s
    return Fraction(total, 1 << n)


def dense_state(g: Hypergraph) -> np.ndarray:
    """Statevector from sequential diagonal gate application."""
    n = g.n
    amps = np.ones(1 << n) / np.sqrt(2.0**n)
    idx = np.arange(1 << n)
    for e in g.edges:
        amps = amps * np.where((idx & e) == e, -1.0, 1.0)
    return amps

_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_I = np.eye(2, dtype=complex)


def dense_pauli(n: int, x: int, z: int) -> np.ndarray:
    """Kronecker-built X^x Z^z (phase convention irrelevant after squaring)."""
    out = np.array([[1.0 + 0j]])
    for b in reversed(range(n)):
        op = _I
        if (x >> b) & 1 and (z >> b) & 1:
            op = _X @ _Z
        elif (x >> b) & 1:
            op = _X
        elif (z >> b) & 1:
            op = _Z
        out = np.kron(out, op)
    return out


def random_graph(n: int, rng: np.random.Generator, max_edges: int = 6) -> Hypergraph:
    count = min(int(rng.integers(0, max_edges + 1)), (1 << n) - 1)
    masks = set()
    while len(masks) < count:
        masks.add(int(rng.integers(1, 1 << n)))
    return from_masks(n, masks)


def random_uniform3(n: int, rng: np.random.Generator, p: float = 0.5) -> Hypergraph:
    from itertools import combinations

    masks = []
    for combo in combinations(range(n), 3):
        if rng.random() < p:
            masks.append((1 << combo[0]) | (1 << combo[1]) | (1 << combo[2]))
    return from_masks(n, masks)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)
