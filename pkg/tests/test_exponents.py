import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from singulex.errors import InvalidParameter, NonvanishingViolated
from singulex.exponents import (
    INFINITY,
    BrieskornPham,
    ExponentValue,
    alpha_br,
    alpha_vtilde,
    applicable_range,
    bp_minimal_exponent,
    classify,
    decompose_residue,
    decrease_predicate,
    family_exponent_conjecture,
    hm_applicable,
    min_product_rule,
    slice_exponent_ordinary_mple,
    vfilt_gap,
)
from singulex.milnor import bp_spectrum

F = Fraction
BP = BrieskornPham.of


def search_residue(a, m):
    """All (b, c) with a = b + c(m-1), 0 <= b <= m-2, by exhaustive search."""
    return [(b, c) for b in range(m - 1) for c in range(a + 1) if b + c * (m - 1) == a]


class TestExponentValue:
    def test_infinity_orders_last(self):
        assert ExponentValue(5) < INFINITY
        assert str(INFINITY) == "inf"
        assert ExponentValue("inf") == INFINITY

    def test_rejects_non_positive(self):
        with pytest.raises(InvalidParameter):
            ExponentValue(0)

    def test_descriptor_validation(self):
        with pytest.raises(InvalidParameter):
            BP([1, 3])
        with pytest.raises(InvalidParameter):
            BP([])


class TestMinimalExponent:
    def test_four_variables_degree_four(self):
        assert bp_minimal_exponent(BP([4, 4, 4, 4])) == 1

    def test_single_variable(self):
        assert bp_minimal_exponent(BP([3])) == F(1, 3)

    def test_cusp_matches_spectrum_minimum(self):
        assert bp_minimal_exponent(BP([2, 3])) == F(5, 6)
        assert bp_spectrum(BP([2, 3])).min == F(5, 6)

    @given(st.lists(st.integers(2, 9), min_size=1, max_size=4), st.lists(st.integers(2, 9), min_size=1, max_size=4))
    def test_additive_under_concatenation(self, m1, m2):
        d1, d2 = BP(m1), BP(m2)
        assert bp_minimal_exponent(d1 + d2).value == bp_minimal_exponent(d1).value + bp_minimal_exponent(d2).value

    @pytest.mark.parametrize("n, m, expected", [(4, 2, F(3, 2)), (7, 2, F(3)), (3, 3, F(2, 3))])
    def test_slice(self, n, m, expected):
        assert slice_exponent_ordinary_mple(n, m) == expected

    def test_slice_rejects_bad_parameters(self):
        with pytest.raises(InvalidParameter):
            slice_exponent_ordinary_mple(1, 2)


class TestProductRule:
    def test_min(self):
        assert min_product_rule(ExponentValue(F(4, 4)), ExponentValue(F(1, 2))) == F(1, 2)

    def test_smooth_factor_is_neutral(self):
        assert min_product_rule(INFINITY, ExponentValue(F(5, 6))) == F(5, 6)
        assert min_product_rule(INFINITY, INFINITY) == INFINITY

    def test_tie(self):
        assert min_product_rule(ExponentValue(F(2, 3)), ExponentValue(F(2, 3))) == F(2, 3)


class TestDecrease:
    @pytest.mark.parametrize("n, a, b, expected", [(6, 4, 2, True), (5, 3, 2, False), (4, 5, 2, True)])
    def test_examples(self, n, a, b, expected):
        assert decrease_predicate(n, a, b) is expected

    def test_forms_agree_on_grid(self):
        for n in range(4, 13):
            for a in range(3, 21):
                for b in range(2, a):
                    ratio = F(a, b) > F(n - 2, n - 3)
                    assert decrease_predicate(n, a, b) is ratio

    def test_constraints(self):
        with pytest.raises(InvalidParameter):
            decrease_predicate(3, 4, 2)
        with pytest.raises(InvalidParameter):
            decrease_predicate(5, 2, 2)


class TestResidue:
    def test_examples(self):
        assert decompose_residue([5], BP([3])) == ((1, 2),)
        assert decompose_residue([0], BP([7])) == ((0, 0),)
        assert decompose_residue([0, 3], BP([2, 3])) == ((0, 0), (1, 1))

    def test_matches_exhaustive_search(self):
        for m in range(2, 11):
            for a in range(31):
                assert search_residue(a, m) == [decompose_residue([a], BP([m]))[0]]


class TestIndices:
    def test_vtilde_examples(self):
        assert alpha_vtilde([0, 3], BP([2, 3])) == F(13, 6)
        assert alpha_vtilde([1, 0], BP([2, 2])) == 2
        for d in (BP([2, 3]), BP([5, 7, 2])):
            assert alpha_vtilde([0] * d.n, d) == bp_minimal_exponent(d)

    def test_br_examples(self):
        assert alpha_br([0, 3], BP([2, 3])) == F(11, 6)
        assert alpha_br([0, 0], BP([2, 3])) == F(5, 6)

    def test_br_precondition(self):
        with pytest.raises(NonvanishingViolated):
            alpha_br([1, 0], BP([2, 3]))

    def test_gap_examples(self):
        r = vfilt_gap([0, 3], BP([2, 3]))
        assert r.gap == F(1, 3)
        assert r.alpha_vtilde.value == r.alpha_br.value + F(2, 6)
        assert vfilt_gap([0, 0], BP([2, 3])).gap == 0
        assert vfilt_gap([0, 1], BP([2, 3])).gap == 0

    def test_gap_nonnegative_and_bound(self):
        for m in itertools.product(range(2, 6), repeat=2):
            d = BP(m)
            for a in itertools.product(range(8), repeat=2):
                if any((x + 1) % mm == 0 for x, mm in zip(a, m)):
                    continue
                r = vfilt_gap(a, d)
                assert r.gap >= 0
                assert r.upper_bound <= r.alpha_vtilde


class TestClassify:
    @pytest.mark.parametrize(
        "alpha, k, du_bois, rational",
        [(F(3, 2), 0, True, True), (F(5, 6), 0, False, False), (F(2), 1, True, False)],
    )
    def test_examples(self, alpha, k, du_bois, rational):
        r = classify(ExponentValue(alpha), k)
        assert (r.is_k_du_bois, r.is_k_rational) == (du_bois, rational)

    def test_infinity(self):
        assert all(classify(INFINITY, k).is_k_rational for k in range(10))

    @given(st.fractions(min_value=F(1, 12), max_value=12, max_denominator=12))
    def test_monotone(self, alpha):
        reports = [classify(ExponentValue(alpha), k) for k in range(14)]
        for r in reports:
            assert not r.is_k_rational or r.is_k_du_bois
        for lo, hi in zip(reports, reports[1:]):
            assert lo.is_k_du_bois >= hi.is_k_du_bois
            assert lo.is_k_rational >= hi.is_k_rational


class TestApplicable:
    @pytest.mark.parametrize(
        "n, m, k, expected", [(7, 2, 2, (True, False)), (7, 2, 1, (True, True)), (4, 3, 0, (True, False))]
    )
    def test_examples(self, n, m, k, expected):
        assert hm_applicable(n, m, k) == expected

    def test_range(self):
        assert applicable_range(7, 2) == ([0, 1, 2], [0, 1])
        assert applicable_range(3, 5) == ([], [])

    def test_exact_boundary(self):
        # (n-1)/m - 1 = 1/2 is not truncated to 0
        assert hm_applicable(4, 2, 0) == (True, True)
        assert hm_applicable(4, 2, 1) == (False, False)


def test_family_conjecture_is_labelled():
    c = family_exponent_conjecture(3, 4)
    assert c.value == F(3, 4)
    assert c.status == "conjectural"
