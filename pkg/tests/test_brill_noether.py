"""Expected-dimension arithmetic, existence bounds, certification, scans."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import nodalbn as nb


class TestBnNumber:
    def test_worked_value(self):
        assert nb.bn_number(pa=5, r=3, d=2, k=1) == 26

    def test_zero_sections_edge(self):
        # formula is pure arithmetic, defined for any integer inputs
        assert nb.bn_number(2, 1, 0, 0) == 2

    @given(
        pa=st.integers(2, 10),
        s=st.integers(1, 10),
        k=st.integers(1, 10),
        d=st.integers(-10, 10),
    )
    def test_split_identity(self, pa, s, k, d):
        lhs = nb.bn_number(pa, s + k, d, k)
        assert lhs == s * s * (pa - 1) + 1 + k * (d + s * (pa - 1) - k)


class TestExpectedCodim:
    def test_worked_value(self):
        omega = nb.Polarization((Fraction(1, 2), Fraction(1, 2)))
        assert nb.expected_codim(omega, (1, 2), d=2, k=1, pa=5) == 5

    def test_integral_multirank_matches_bn_number(self):
        omega = nb.Polarization((Fraction(1, 3), Fraction(2, 3)))
        # constant multirank r: codim equals k(k - d + r(pa-1))
        for r in (1, 2, 3):
            codim = nb.expected_codim(omega, (r, r), d=3, k=2, pa=4)
            assert codim == 2 * (2 - 3 + r * 3)

    def test_length_mismatch(self):
        omega = nb.Polarization((Fraction(1, 2), Fraction(1, 2)))
        with pytest.raises(ValueError):
            nb.expected_codim(omega, (1, 2, 3), d=1, k=1, pa=2)


class TestNecessaryConditions:
    def test_passes_positive_degree(self):
        omega = nb.Polarization((Fraction(1, 2), Fraction(1, 2)))
        verdict = nb.necessary_conditions(omega, (2, 2), d=1, k=1)
        assert verdict.ok

    def test_negative_degree_fails(self):
        omega = nb.Polarization((Fraction(1, 2), Fraction(1, 2)))
        verdict = nb.necessary_conditions(omega, (2, 2), d=-1, k=2)
        assert not verdict.ok

    def test_zero_degree_needs_enough_sections(self):
        omega = nb.Polarization((Fraction(1, 2), Fraction(1, 2)))
        low = nb.necessary_conditions(omega, (2, 2), d=0, k=1)
        assert not low.ok
        high = nb.necessary_conditions(omega, (2, 2), d=0, k=2)
        assert high.ok

    def test_rejects_bad_k(self):
        omega = nb.Polarization((Fraction(1),))
        with pytest.raises(ValueError):
            nb.necessary_conditions(omega, (1,), d=1, k=0)


class TestBgnBounds:
    def test_passing_instance(self):
        assert nb.bgn_bounds(pa=5, r=3, d=2, k=1).ok

    def test_rank_bound_fails(self):
        verdict = nb.bgn_bounds(pa=2, r=5, d=1, k=4)
        assert not verdict.ok
        assert any("rank bound" in f for f in verdict.failures)

    def test_degree_and_section_failures(self):
        verdict = nb.bgn_bounds(pa=3, r=2, d=0, k=2)
        assert not verdict.ok
        assert len(verdict.failures) >= 2

    def test_input_validation(self):
        with pytest.raises(ValueError):
            nb.bgn_bounds(pa=3, r=1, d=1, k=1)
        with pytest.raises(ValueError):
            nb.bgn_bounds(pa=3, r=2, d=1, k=0)


class TestPerComponent:
    def test_bounds_exact(self):
        bounds = nb.per_component_bgn(r=3, k=1, degrees=(1, 1), genera=(2, 3))
        assert [b.bound for b in bounds] == [Fraction(4, 2), Fraction(7, 3)]
        assert all(b.ok for b in bounds)

    def test_detects_failure(self):
        bounds = nb.per_component_bgn(r=2, k=2, degrees=(1, 1), genera=(2, 2))
        assert [b.ok for b in bounds] == [False, False]
        assert bounds[0].bound == Fraction(3, 2)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            nb.per_component_bgn(r=2, k=1, degrees=(1,), genera=(2, 2))


class TestCoherentSystems:
    def test_alpha_range(self):
        assert nb.alpha_range(r=3, d=2, k=1) == (0, 1)
        assert nb.alpha_range(r=5, d=3, k=2) == (0, 1)
        assert nb.alpha_range(r=4, d=3, k=1) == (0, 1)

    def test_alpha_range_validation(self):
        with pytest.raises(ValueError):
            nb.alpha_range(r=2, d=1, k=2)
        with pytest.raises(ValueError):
            nb.alpha_range(r=2, d=0, k=1)

    def test_coherent_slope(self):
        value = nb.coherent_slope(Fraction(2), Fraction(4), k=1, alpha=Fraction(1, 2))
        assert value == Fraction(9, 4)
        with pytest.raises(ValueError):
            nb.coherent_slope(Fraction(0), Fraction(1), 1, Fraction(1))


class TestCertify:
    def test_worked_certificate(self, two_curve):
        eta = nb.canonical(two_curve)
        cert = nb.certify_bn_component(two_curve, eta, s=2, k=1, d=2)
        assert isinstance(cert, nb.BNCertificate)
        assert cert.r == 3
        assert cert.degree_tuple.degrees == (1, 1)
        assert cert.beta == 26
        assert cert.moduli_dim == 17
        assert cert.h1_dual == 10
        assert cert.fiber_dim == 9
        assert cert.identity_ok
        assert [item.name for item in cert.checklist] == [
            "compact_type",
            "goodness_proxy",
            "section_bound",
            "small_slope_tuple",
            "per_component_degree_bound",
            "degree_range",
        ]
        assert all(item.ok for item in cert.checklist)

    def test_section_bound_failure(self, two_curve):
        eta = nb.canonical(two_curve)
        result = nb.certify_bn_component(two_curve, eta, s=1, k=3, d=2)
        assert isinstance(result, nb.CertificationFailure)
        assert [item.name for item in result.failed] == ["section_bound"]

    def test_small_slope_failure(self, two_curve):
        eta = nb.canonical(two_curve)
        result = nb.certify_bn_component(two_curve, eta, s=1, k=1, d=3)
        assert isinstance(result, nb.CertificationFailure)
        assert [item.name for item in result.failed] == ["small_slope_tuple"]

    def test_bad_polarization_is_hard_error(self, two_curve):
        omega = nb.Polarization((Fraction(1, 4), Fraction(3, 4)))
        with pytest.raises(nb.PolarizationError):
            nb.certify_bn_component(two_curve, omega, s=2, k=1, d=2)

    def test_not_compact_type_is_hard_error(self, cycle_curve):
        eta = nb.Polarization((Fraction(1, 2), Fraction(1, 2)))
        with pytest.raises(nb.NotCompactTypeError):
            nb.certify_bn_component(cycle_curve, eta, s=2, k=1, d=2)

    def test_input_validation(self, two_curve):
        eta = nb.canonical(two_curve)
        with pytest.raises(ValueError):
            nb.certify_bn_component(two_curve, eta, s=0, k=1, d=2)
        with pytest.raises(ValueError):
            nb.certify_bn_component(two_curve, eta, s=2, k=0, d=2)

    def test_certified_tuple_passes_conditions(self, comb4):
        eta = nb.canonical(comb4)
        cert = nb.certify_bn_component(comb4, eta, s=6, k=1, d=5)
        assert isinstance(cert, nb.BNCertificate)
        deco = nb.order_components(comb4, comb4.gamma)
        assert nb.stability_conditions(comb4, eta, deco, cert.degree_tuple).passed


class TestMaxSections:
    def test_values(self, two_curve):
        assert nb.max_section_count(two_curve, 2) == 1
        assert nb.max_section_count(two_curve, 4) == 2

    def test_single_component(self):
        assert nb.max_section_count(nb.NodalCurve((3,)), 5) == (1 + 10) // 3


class TestScan:
    def test_small_chains_all_certified(self):
        curves = [nb.chain_curve((2, 2)), nb.chain_curve((2, 3))]
        rows = nb.conjecture_scan(curves, s_values=range(2, 5))
        assert rows
        assert all(row.certified for row in rows)
        assert all(row.status == "CERTIFIED" for row in rows)

    def test_beta_column(self):
        curve = nb.chain_curve((2, 2))
        pa = curve.arithmetic_genus()
        rows = nb.conjecture_scan([curve], s_values=(2,))
        assert rows
        for row in rows:
            assert row.beta == nb.bn_number(pa, row.s + row.k, row.d, row.k)

    def test_out_of_hypothesis_cells_skipped(self):
        rows = nb.conjecture_scan([nb.chain_curve((2, 2, 2))], s_values=(1, 2, 3))
        # 2(gamma-1) = 4 > 3: nothing qualifies
        assert rows == []

    def test_explicit_grid_filtered(self):
        rows = nb.conjecture_scan(
            [nb.chain_curve((2, 2))],
            s_values=(4,),
            d_values=(1, 2, 3, 4, 9),
            k_values=(1, 2, 9),
        )
        assert {(row.d, row.k) for row in rows} == {
            (2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (4, 2)
        }

    def test_rows_sorted(self):
        curves = [nb.chain_curve((2, 3)), nb.chain_curve((2, 2))]
        rows = nb.conjecture_scan(curves, s_values=(2, 3))
        keys = [(r.gamma, r.genera, r.s, r.d, r.k) for r in rows]
        assert keys == sorted(keys)

    def test_generator_arguments(self):
        rows = nb.conjecture_scan(
            iter([nb.chain_curve((2, 2)), nb.chain_curve((3, 3))]),
            s_values=iter((2, 3)),
        )
        assert {row.genera for row in rows} == {(2, 2), (3, 3)}
