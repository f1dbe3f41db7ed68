"""Exact Pauli spectra of hypergraph states by independent routes.

Three ways to the same numbers, kept deliberately redundant:

* `component_direct` sums the phase function over the basis (state overlap);
* `component_induced` traces the phase unitary of the induced hypergraph;
* `full_spectrum` batches the direct route with one Walsh-Hadamard
  transform per X mask, exactly, in integer arithmetic.

`star_trace_sum` is the moment accumulator over the simplified induced
graphs, and `rank_moment` evaluates the same sum in closed form per X mask
for graphs whose edges have at most three vertices, using the GF(2) rank
of the induced pair-edge form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import IO

import numpy as np

from . import budget as _budget
from .bitops import fwht, gf2_rank_fast, superset_table, table_to_bits
from .hypergraph import (
    Hypergraph,
    PauliIndex,
    _edges_at_least_two,
    cross_masks,
    induced_full,
    induced_star,
)
from .phasestate import PhaseState, from_hypergraph, trace_of_state


@dataclass(frozen=True)
class PauliSpectrum:
    """Squared Pauli components as integer numerators over 4^n.

    sq[x, z] holds (2^n * Tr P_{x,z} rho)^2, so each squared component is
    sq[x, z] / 4^n and the purity identity reads sum(sq) == 2^{3n}.
    """

    n: int
    sq: np.ndarray

    def component_sq(self, x: int, z: int) -> Fraction:
        return Fraction(int(self.sq[x, z]), 4**self.n)

    def total(self) -> int:
        return int(self.sq.sum(dtype=np.int64))

    def validate(self) -> None:
        if self.sq.shape != (1 << self.n, 1 << self.n):
            raise AssertionError("spectrum table has the wrong shape")
        if self.total() != 2 ** (3 * self.n):
            raise AssertionError("purity normalization violated")
        if int(self.sq[0, 0]) != 4**self.n:
            raise AssertionError("identity component must be 1")
        if int(self.sq.min()) < 0 or int(self.sq.max()) > 4**self.n:
            raise AssertionError("squared component outside [0, 1]")


def component_direct(state: PhaseState, p: PauliIndex) -> Fraction:
    """Signed component 2^-n sum_a (-1)^{f(a) + f(a^x) + z.a}, exact.

    The sign is relative to the dropped global Pauli phase; its square is
    the physical quantity.
    """
    p.check(state.n)
    size = 1 << state.n
    bits = state.sign_bits()
    idx = np.arange(size)
    total = bits ^ bits[idx ^ p.x]
    if p.z:
        total = total ^ (np.bitwise_count(idx & p.z) & 1).astype(np.uint8)
    flips = int(total.sum())
    return Fraction(size - 2 * flips, size)


def component_induced(g: Hypergraph, p: PauliIndex, budget: int | None = None) -> Fraction:
    """Squared component via the induced-hypergraph trace identity."""
    t = trace_of_state(from_hypergraph(induced_full(g, p), budget))
    return Fraction(t * t, 4**g.n)


def full_spectrum(state: PhaseState, budget: int | None = None) -> PauliSpectrum:
    """All 4^n squared components, Theta(n 4^n) time, exact integers."""
    n = state.n
    _budget.check(n, _budget.spectrum_budget(budget), "full Pauli spectrum")
    size = 1 << n
    v0 = state.pm_table()
    idx = np.arange(size)
    sq = np.empty((size, size), dtype=np.int64)
    for x in range(size):
        v = v0 * v0[idx ^ x]
        w = fwht(v)
        sq[x] = w * w
    return PauliSpectrum(n, sq)


def _star_pair_table(g: Hypergraph, x: int) -> int:
    """Phase table of the size->=2 edge layer of the induced star graph."""
    table = 0
    for e2 in _edges_at_least_two(g, x):
        table ^= superset_table(g.n, e2)
    return table


def star_trace_sum(g: Hypergraph, alpha, budget: int | None = None):
    """sum over (x, z) of |Tr U(G*_{x,z})|^{2 alpha}.

    One Walsh-Hadamard transform per x over the phase function of the
    induced edges of size >= 2; the z index is the transform variable since
    the star graph's 1-edges are exactly the z mask.  Returns an exact
    integer when 2*alpha is a positive integer, else a float.
    """
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    two_alpha = 2 * alpha
    _budget.check(g.n, _budget.sim_budget(budget), "star trace sum")
    size = 1 << g.n
    exact = two_alpha.denominator == 1
    acc_int = 0
    acc_float = []
    for x in range(size):
        table = _star_pair_table(g, x)
        v = 1 - 2 * table_to_bits(table, g.n).astype(np.int64)
        w = fwht(v)
        mags, counts = np.unique(np.abs(w), return_counts=True)
        if exact:
            e = int(two_alpha)
            acc_int += sum(int(c) * int(m) ** e for m, c in zip(mags, counts))
        else:
            acc_float.append(
                math.fsum(float(c) * float(m) ** float(two_alpha) for m, c in zip(mags, counts))
            )
    return acc_int if exact else math.fsum(acc_float)


def rank_histogram(g: Hypergraph, chunk: int = 1 << 16) -> np.ndarray:
    """Histogram over x of the GF(2) rank of the induced pair-edge form.

    Only valid when every edge has at most three vertices: then the
    induced edges of size >= 2 are exactly the pairs {j, k} flagged by the
    parity of x over the matching third vertices, a symmetric zero-diagonal
    GF(2) matrix B(x).  Ranks of such forms are even.
    """
    n = g.n
    size = 1 << n
    pairs = list(cross_masks(g).items())
    hist = np.zeros(n + 1, dtype=np.int64)
    if not pairs:
        hist[0] = size
        return hist
    for start in range(0, size, chunk):
        stop = min(start + chunk, size)
        xs = np.arange(start, stop, dtype=np.uint64)
        rows = np.zeros((stop - start, n), dtype=np.int64)
        for (j, k), m in pairs:
            par = (np.bitwise_count(xs & np.uint64(m)) & 1).astype(np.int64)
            rows[:, j] |= par << k
            rows[:, k] |= par << j
        for rowvals in rows.tolist():
            r = gf2_rank_fast([v for v in rowvals if v])
            hist[r] += 1
    if int(hist[1::2].sum()) != 0:
        raise AssertionError("pair-edge form produced an odd rank")
    return hist


def rank_moment(g: Hypergraph, alpha):
    """PL-moment m_alpha = 2^-n sum_x 2^{(1-alpha) rank(B(x))}.

    Closed-form z-sum for quadratic phase functions: the Walsh spectrum of
    a rank-r quadratic form takes the single magnitude 2^{n-r/2} on exactly
    2^r points, so sum_z |Tr|^{2a} = 2^{2an + (1-a) r}.  Exact Fractions
    whenever 2*alpha is an integer.
    """
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    hist = rank_histogram(g)
    n = g.n
    if (2 * alpha).denominator == 1:
        total = Fraction(0)
        for r, count in enumerate(hist.tolist()):
            if count:
                exponent = (1 - alpha) * r
                assert exponent.denominator == 1
                total += count * Fraction(2) ** int(exponent)
        return total / (1 << n)
    total_f = math.fsum(
        count * 2.0 ** ((1 - float(alpha)) * r) for r, count in enumerate(hist.tolist()) if count
    )
    return total_f / (1 << n)


def dump_csv(spectrum: PauliSpectrum, stream: IO[str]) -> None:
    """Write squared-component numerators; denominator stated up front."""
    stream.write(f"# denominator 4^n = {4**spectrum.n}\n")
    stream.write("x,z,sq_component_numerator\n")
    size = 1 << spectrum.n
    for x in range(size):
        row = spectrum.sq[x]
        for z in range(size):
            stream.write(f"{x},{z},{int(row[z])}\n")


def star_component_check(g: Hypergraph, p: PauliIndex, budget: int | None = None) -> Fraction:
    """Squared component via the star graph (test hook; z-layer from the mask)."""
    t = trace_of_state(from_hypergraph(induced_star(g, p), budget))
    return Fraction(t * t, 4**g.n)
