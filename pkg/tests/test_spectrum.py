"""Spectrum routes: direct, induced, Walsh-Hadamard batch, rank classes."""

from fractions import Fraction

import numpy as np
import pytest

from hypermagic.bitops import fwht, gf2_rank_fast
from hypermagic.budget import BudgetError
from hypermagic.hypergraph import PauliIndex, build, c_complete, empty, from_masks
from hypermagic.phasestate import from_hypergraph
from hypermagic.spectrum import (
    component_direct,
    component_induced,
    dump_csv,
    full_spectrum,
    rank_histogram,
    rank_moment,
    star_trace_sum,
)

from conftest import dense_pauli, dense_state, naive_component, random_graph, random_uniform3

CCZ = build(3, [(1, 2, 3)])


class TestComponentDirect:
    def test_identity_pauli_gives_one(self, rng):
        g = random_graph(4, rng)
        assert component_direct(from_hypergraph(g), PauliIndex(0, 0)) == 1

    def test_plus_state_spectrum(self):
        st = from_hypergraph(empty(3))
        for x in range(8):
            assert component_direct(st, PauliIndex(x, 0)) == 1
            for z in range(1, 8):
                assert component_direct(st, PauliIndex(x, z)) == 0

    def test_ccz_x1_component(self):
        # oracle: brute-force sum over the 8 basis states
        assert naive_component(CCZ, 0b001, 0) == Fraction(1, 2)
        assert component_direct(from_hypergraph(CCZ), PauliIndex(0b001, 0)) == Fraction(1, 2)

    def test_matches_naive_everywhere(self, rng):
        for _ in range(15):
            n = int(rng.integers(1, 6))
            g = random_graph(n, rng)
            st = from_hypergraph(g)
            for x in range(1 << n):
                for z in range(1 << n):
                    assert component_direct(st, PauliIndex(x, z)) == naive_component(g, x, z)

    def test_matches_dense_matrix_oracle(self, rng):
        for _ in range(6):
            n = int(rng.integers(1, 5))
            g = random_graph(n, rng)
            v = dense_state(g)
            st = from_hypergraph(g)
            for x in range(1 << n):
                for z in range(1 << n):
                    tr = v.conj() @ (dense_pauli(n, x, z) @ v)
                    d = component_direct(st, PauliIndex(x, z))
                    assert abs(abs(tr) ** 2 - float(d * d)) < 1e-10


class TestComponentInduced:
    def test_route_equality_exhaustive(self, rng):
        for _ in range(12):
            n = int(rng.integers(1, 7))
            g = random_graph(n, rng)
            st = from_hypergraph(g)
            for x in range(1 << n):
                for z in range(1 << n):
                    p = PauliIndex(x, z)
                    d = component_direct(st, p)
                    assert d * d == component_induced(g, p)

    def test_identity(self, rng):
        g = random_graph(5, rng)
        assert component_induced(g, PauliIndex(0, 0)) == 1

    def test_ccz_x1_squared(self):
        # induced graph has the single 2-edge {2,3}; Tr = 4, squared 1/4
        assert component_induced(CCZ, PauliIndex(0b001, 0)) == Fraction(1, 4)


class TestFullSpectrum:
    def test_plus_state_indicator(self):
        spec = full_spectrum(from_hypergraph(empty(3)))
        spec.validate()
        assert all(spec.sq[x, 0] == 4**3 for x in range(8))
        assert int((spec.sq != 0).sum()) == 8

    def test_graph_state_is_stabilizer(self):
        # triangle graph state: exactly 2^n unit components, rest zero
        tri = build(3, [(1, 2), (2, 3), (1, 3)])
        spec = full_spectrum(from_hypergraph(tri))
        spec.validate()
        values, counts = np.unique(spec.sq, return_counts=True)
        assert list(values) == [0, 4**3]
        assert counts[1] == 8

    def test_any_low_uniform_graph_is_stabilizer(self, rng):
        # every hypergraph with edges of at most two vertices is Clifford:
        # the spectrum is an indicator with exactly 2^n ones
        for _ in range(15):
            n = int(rng.integers(1, 6))
            count = min(int(rng.integers(0, 7)), (1 << n) - 1)
            masks = set()
            while len(masks) < count:
                m = int(rng.integers(1, 1 << n))
                if m.bit_count() <= 2:
                    masks.add(m)
            spec = full_spectrum(from_hypergraph(from_masks(n, masks)))
            values = np.unique(spec.sq)
            assert set(values.tolist()) <= {0, 4**n}
            assert int((spec.sq == 4**n).sum()) == 1 << n

    def test_normalization_random(self, rng):
        for _ in range(10):
            n = int(rng.integers(1, 7))
            spec = full_spectrum(from_hypergraph(random_graph(n, rng)))
            spec.validate()

    def test_matches_component_direct(self, rng):
        n = 4
        g = random_graph(n, rng)
        st = from_hypergraph(g)
        spec = full_spectrum(st)
        for x in range(1 << n):
            for z in range(1 << n):
                d = component_direct(st, PauliIndex(x, z))
                assert spec.component_sq(x, z) == d * d

    def test_budget(self):
        with pytest.raises(BudgetError):
            full_spectrum(from_hypergraph(empty(6)), budget=5)


class TestStarTraceSum:
    @pytest.mark.parametrize("alpha", [Fraction(1, 2), 2, 3])
    def test_consistency_with_full_spectrum(self, rng, alpha):
        from hypermagic.magic import pl_moment

        for _ in range(8):
            n = int(rng.integers(2, 7))
            g = random_graph(n, rng)
            total = star_trace_sum(g, alpha)
            exponent = n * (1 + 2 * Fraction(alpha))
            moment = Fraction(total, 2 ** int(exponent))
            assert moment == pl_moment(full_spectrum(from_hypergraph(g)), alpha)

    def test_empty_graph_alpha2(self):
        n = 3
        total = star_trace_sum(empty(n), 2)
        assert Fraction(total, 2 ** (5 * n)) == 1

    def test_three_complete_n3(self):
        total = star_trace_sum(c_complete(3, 3), 2)
        assert Fraction(total, 2**15) == Fraction(11, 32)

    def test_non_half_integer_alpha_float(self):
        val = star_trace_sum(CCZ, 0.8)
        assert isinstance(val, float) and val > 0


class TestQuadraticRankLemma:
    def test_walsh_spectrum_of_quadratic_forms(self, rng):
        # oracle for the rank-route: FWHT of a random pure quadratic form
        # has 2^r nonzeros all of magnitude 2^{n - r/2}
        for _ in range(25):
            n = int(rng.integers(2, 8))
            pairs = []
            rows = [0] * n
            for j in range(n):
                for k in range(j + 1, n):
                    if rng.random() < 0.5:
                        pairs.append((j, k))
                        rows[j] |= 1 << k
                        rows[k] |= 1 << j
            r = gf2_rank_fast([v for v in rows if v])
            idx = np.arange(1 << n)
            table = np.zeros(1 << n, dtype=np.int64)
            for j, k in pairs:
                table ^= ((idx >> j) & 1) * ((idx >> k) & 1)
            w = fwht(1 - 2 * table)
            mags = np.abs(w)
            nonzero = mags[mags > 0]
            assert r % 2 == 0
            assert len(nonzero) == 2**r
            assert np.all(nonzero == 2 ** (n - r // 2))


class TestRankMoment:
    def test_ccz_values(self):
        assert rank_moment(CCZ, 2) == Fraction(11, 32)
        assert rank_moment(CCZ, Fraction(1, 2)) == Fraction(15, 8)

    def test_histogram_total(self, rng):
        g = random_uniform3(6, rng)
        hist = rank_histogram(g)
        assert int(hist.sum()) == 64

    @pytest.mark.parametrize("alpha", [Fraction(1, 2), 2, 3])
    def test_agrees_with_full_spectrum(self, rng, alpha):
        from hypermagic.magic import pl_moment

        for _ in range(10):
            n = int(rng.integers(3, 7))
            g = random_uniform3(n, rng)
            assert rank_moment(g, alpha) == pl_moment(full_spectrum(from_hypergraph(g)), alpha)

    def test_agrees_with_star_on_mixed_small_edges(self, rng):
        # 1- and 2-edges mixed in: still a quadratic pair layer
        g = from_masks(4, [0b0111, 0b1011, 0b0001, 0b0110])
        total = star_trace_sum(g, 2)
        assert rank_moment(g, 2) == Fraction(total, 2**20)

    def test_rejects_big_edges(self):
        with pytest.raises(ValueError):
            rank_moment(build(4, [(1, 2, 3, 4)]), 2)


class TestCsvDump:
    def test_header_and_shape(self, tmp_path):
        import io

        spec = full_spectrum(from_hypergraph(CCZ))
        buf = io.StringIO()
        dump_csv(spec, buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == f"# denominator 4^n = {4**3}"
        assert lines[1] == "x,z,sq_component_numerator"
        assert len(lines) == 2 + 64
        assert lines[2] == f"0,0,{4**3}"
