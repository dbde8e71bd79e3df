"""Weight vectors, the canonical choice, split defects, goodness."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import nodalbn as nb
from conftest import (
    random_good_polarization,
    random_tree_curve,
    random_valid_polarization,
)
from oracles import raw_crossing_count, raw_defect


class TestPolarizationType:
    def test_weights_coerced_to_fractions(self):
        omega = nb.Polarization((Fraction(1, 2), Fraction(1, 2)))
        assert omega[1] == Fraction(1, 2)
        assert len(omega) == 2

    def test_rejects_bad_sum(self):
        with pytest.raises(nb.PolarizationError):
            nb.Polarization((Fraction(1, 2), Fraction(1, 3)))

    def test_rejects_nonpositive_weight(self):
        with pytest.raises(nb.PolarizationError):
            nb.Polarization((Fraction(0), Fraction(1)))

    def test_rejects_weight_one_with_several_components(self):
        with pytest.raises(nb.PolarizationError):
            nb.Polarization((Fraction(1), Fraction(1, 2), Fraction(-1, 2)))

    def test_single_weight_one_allowed(self):
        omega = nb.Polarization((Fraction(1),))
        assert omega[1] == 1

    def test_subcurve_weight(self):
        omega = nb.Polarization((Fraction(1, 4), Fraction(1, 4), Fraction(1, 2)))
        assert omega.subcurve_weight([1, 3]) == Fraction(3, 4)


class TestCanonical:
    def test_two_curve(self, two_curve):
        assert nb.canonical(two_curve).weights == (Fraction(3, 8), Fraction(5, 8))

    def test_comb3(self, comb3_222):
        assert nb.canonical(comb3_222).weights == (
            Fraction(3, 10),
            Fraction(3, 10),
            Fraction(2, 5),
        )

    def test_single_component(self):
        assert nb.canonical(nb.NodalCurve((4,))).weights == (Fraction(1),)

    def test_formula_matches_definition(self, chain4):
        omega = nb.canonical(chain4)
        pa = chain4.arithmetic_genus()
        for i in chain4.component_ids:
            expected = Fraction(
                2 * chain4.genus(i) - 2 + chain4.node_degree(i), 2 * pa - 2
            )
            assert omega[i] == expected


class TestDefect:
    def test_worked_value(self, two_curve):
        omega = nb.Polarization((Fraction(1, 4), Fraction(3, 4)))
        assert nb.delta_structure_sheaf(two_curve, omega, [1]) == 0

    def test_canonical_split_value(self, two_curve):
        eta = nb.canonical(two_curve)
        assert nb.delta_structure_sheaf(two_curve, eta, [1]) == Fraction(1, 2)
        assert nb.delta_structure_sheaf(two_curve, eta, [2]) == Fraction(1, 2)

    def test_matches_independent_recomputation(self, comb4):
        rng = random.Random(3)
        for _ in range(10):
            omega = random_valid_polarization(rng, comb4.gamma)
            for ids in ([1], [2, 4], [1, 2, 4], [1, 2, 3, 4]):
                expected = raw_defect(
                    comb4.genera, comb4.nodes, omega.weights, ids
                )
                assert nb.delta_structure_sheaf(comb4, omega, ids) == expected

    def test_whole_curve_defect_is_zero(self, chain4):
        rng = random.Random(4)
        omega = random_valid_polarization(rng, chain4.gamma)
        assert nb.delta_structure_sheaf(chain4, omega, chain4.component_ids) == 0


class TestGoodness:
    def test_canonical_is_good(self, two_curve, chain4, comb4):
        for curve in (two_curve, chain4, comb4):
            report = nb.goodness_proxy(curve, nb.canonical(curve))
            assert report.passed
            for split in report.splits:
                assert split.ok
                assert split.defect == Fraction(1, 2)

    def test_bad_weights_detected(self, two_curve):
        omega = nb.Polarization((Fraction(1, 4), Fraction(3, 4)))
        report = nb.goodness_proxy(two_curve, omega)
        assert not report.passed
        bad = [s for s in report.splits if not s.ok]
        assert bad and bad[0].defect == 0

    def test_grip_weight_majority_iff_many_nodes(self):
        # the grip's weight reaches 1/2 exactly when its node count
        # reaches p_a + 1 - 2 * genus
        for genera in ((2, 2, 2, 2), (2, 3, 4, 9), (3, 3, 3, 3, 3)):
            curve = nb.comb_curve(genera)
            grip = curve.grip()
            eta = nb.canonical(curve)
            pa = curve.arithmetic_genus()
            many = curve.node_degree(grip) >= pa + 1 - 2 * curve.genus(grip)
            assert (eta[grip] >= Fraction(1, 2)) == many


class TestPerturb:
    def test_shifts_weights(self, two_curve):
        eta = nb.canonical(two_curve)
        moved = nb.perturb(eta, [Fraction(1, 16), Fraction(-1, 16)])
        assert moved.weights == (Fraction(7, 16), Fraction(9, 16))

    def test_rejects_nonzero_sum(self, two_curve):
        eta = nb.canonical(two_curve)
        with pytest.raises(nb.PolarizationError):
            nb.perturb(eta, [Fraction(1, 16), Fraction(1, 16)])

    def test_rejects_wrong_length(self, two_curve):
        eta = nb.canonical(two_curve)
        with pytest.raises(nb.PolarizationError):
            nb.perturb(eta, [Fraction(0)])


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_split_defects_sum_to_one(seed):
    rng = random.Random(seed)
    curve = random_tree_curve(rng, gamma_max=6)
    if curve.gamma == 1:
        return
    omega = random_valid_polarization(rng, curve.gamma)
    for _, side, rest in curve.edge_splits():
        total = nb.delta_structure_sheaf(curve, omega, side) + nb.delta_structure_sheaf(
            curve, omega, rest
        )
        assert total == 1


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_canonical_defect_is_half_crossing(seed):
    rng = random.Random(seed)
    curve = random_tree_curve(rng, gamma_max=6)
    eta = nb.canonical(curve)
    ids = list(curve.component_ids)
    size = rng.randint(1, curve.gamma)
    sub = frozenset(rng.sample(ids, size))
    if not curve.is_connected_subcurve(sub):
        return
    crossing = raw_crossing_count(curve.nodes, sub)
    assert nb.delta_structure_sheaf(curve, eta, sub) == Fraction(crossing, 2)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_random_good_polarization_is_good(seed):
    rng = random.Random(seed)
    curve = random_tree_curve(rng, gamma_max=6)
    omega = random_good_polarization(rng, curve)
    assert nb.goodness_proxy(curve, omega).passed
