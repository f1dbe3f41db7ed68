"""Symmetry classes, reduced spectra, closed forms for complete families."""

import math
from fractions import Fraction

import pytest

from hypermagic.hypergraph import build, c_complete
from hypermagic.magic import log2_of, pl_moment
from hypermagic.phasestate import from_hypergraph
from hypermagic.spectrum import full_spectrum, rank_moment
from hypermagic.symmetric import (
    closed_3complete,
    closed_ncomplete,
    closed_report,
    complete_layer_sizes,
    pl_moment_reduced,
    reduced_spectrum,
    symmetry_classes,
)


class TestSymmetryClasses:
    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_multiplicities_cover_all_paulis(self, n):
        assert sum(c.multiplicity for c in symmetry_classes(n)) == 4**n

    def test_structural_invariance_check(self):
        complete_layer_sizes(c_complete(5, 3))
        with pytest.raises(ValueError):
            complete_layer_sizes(build(4, [(1, 2, 3)]))


class TestReducedSpectrum:
    def test_identity_class_component_one(self):
        for cls, sq in reduced_spectrum(c_complete(4, 3)):
            if (cls.m, cls.m1, cls.m0) == (0, 0, 0):
                assert sq == 1

    def test_ncomplete_m0_classes_vanish(self):
        for cls, sq in reduced_spectrum(c_complete(5, 5)):
            if cls.m == 0 and cls.m0 >= 1:
                assert sq == 0

    def test_class_weighted_moment_equals_full(self):
        g = c_complete(6, 3)
        full = full_spectrum(from_hypergraph(g))
        for alpha in (2, Fraction(1, 2)):
            assert pl_moment_reduced(g, alpha) == pl_moment(full, alpha)

    def test_components_constant_within_class(self):
        # spot-check the symmetry observation itself: permuting positions
        # with fixed (m, m1, m0) does not change the component
        from hypermagic.hypergraph import PauliIndex
        from hypermagic.spectrum import component_induced

        g = c_complete(5, 3)
        reference = {}
        for cls, sq in reduced_spectrum(g):
            reference[(cls.m, cls.m1, cls.m0)] = sq
        # a scattered representative of class m=2, m1=1, m0=1
        x = 0b10010
        z = 0b00110  # one z inside the x support (bit 1? no) -> compute
        # x bits {1,4}; choose z with one bit inside x {4} and one outside {2}
        z = (1 << 4) | (1 << 2)
        got = component_induced(g, PauliIndex(x, z))
        assert got == reference[(2, 1, 1)]

    def test_rejects_non_symmetric(self):
        with pytest.raises(ValueError):
            reduced_spectrum(build(4, [(1, 2), (2, 3)]))


class TestClosedForms:
    def test_cross_formula_agreement_n3(self):
        for alpha in (2, Fraction(1, 2)):
            assert closed_3complete(3, alpha) == closed_ncomplete(3, alpha)

    def test_ccz_goldens(self):
        assert closed_ncomplete(3, 2) == Fraction(11, 32)
        assert closed_ncomplete(3, Fraction(1, 2)) == Fraction(15, 8)

    def test_n2_cz_is_clifford(self):
        assert closed_ncomplete(2, 2) == 1
        assert closed_ncomplete(2, Fraction(1, 2)) == 1
        assert closed_report("ncomplete", 2, 2).sre == 0.0

    @pytest.mark.parametrize("n", range(3, 11))
    def test_3complete_matches_bruteforce(self, n):
        g = c_complete(n, 3)
        assert rank_moment(g, 2) == closed_3complete(n, 2)
        assert rank_moment(g, Fraction(1, 2)) == closed_3complete(n, Fraction(1, 2))

    @pytest.mark.parametrize("n", range(2, 11))
    def test_ncomplete_matches_bruteforce(self, n):
        spec = full_spectrum(from_hypergraph(c_complete(n, n)))
        assert pl_moment(spec, 2) == closed_ncomplete(n, 2)
        assert pl_moment(spec, Fraction(1, 2)) == closed_ncomplete(n, Fraction(1, 2))

    def test_3complete_closed_form_at_n17(self):
        # past the full-spectrum range: 131072 rank classes vs the formula
        g = c_complete(17, 3)
        assert rank_moment(g, 2) == closed_3complete(17, 2)
        assert rank_moment(g, Fraction(1, 2)) == closed_3complete(17, Fraction(1, 2))

    def test_3complete_m2_limit(self):
        # entropy tends to 3 from below as the moment tends to 1/8
        val = closed_report("3complete", 40, 2).sre
        assert math.isclose(val, 3.0, abs_tol=1e-8)

    def test_ncomplete_half_limit(self):
        # M_{1/2} increases monotonically to 2 log2 3
        prev = -1.0
        for n in range(2, 31):
            cur = closed_report("ncomplete", n, Fraction(1, 2)).sre
            assert cur >= prev - 1e-12
            prev = cur
        assert abs(prev - 2 * math.log2(3)) < 1e-6

    def test_ncomplete_m2_decreasing_beyond_4(self):
        values = [closed_report("ncomplete", n, 2).sre for n in range(4, 31)]
        for hi, lo in zip(values, values[1:]):
            assert lo < hi

    def test_sharp_gap(self):
        # for the 3-complete family the two entropy orders separate linearly
        for n in range(6, 31):
            m_half = closed_3complete(n, Fraction(1, 2))
            m_two = closed_3complete(n, 2)
            gap = 2 * log2_of(m_half) - (-log2_of(m_two))
            assert gap >= n - 8

    def test_rejects_unsupported_alpha(self):
        with pytest.raises(ValueError):
            closed_3complete(5, 3)
        with pytest.raises(ValueError):
            closed_ncomplete(5, Fraction(1, 3))

    def test_minimum_sizes(self):
        with pytest.raises(ValueError):
            closed_3complete(2, 2)
        with pytest.raises(ValueError):
            closed_ncomplete(1, 2)
