# Standard Library Imports
import logging

from fractions import Fraction

# Quipu
import pytest

from mpmath import mpf
from quipu.core.graph import KVector, from_kvector
from quipu.core.spectral import lambda0, rho_tree, solve_limit_equation
from quipu.core.transfer import phi_kvector_at
from quipu.exceptions import InvalidDataError, ValidationError
from quipu.search import family_min
from quipu.utils import ConvergenceKind, FamilyId, LimitKind
from quipu.verify import (
    asymptotic_profile,
    certify_minimizer,
    closed_form_checks,
    closed_form_double_prime,
    closed_form_e7_difference,
    closed_form_e8_difference,
    closed_form_prime,
    e8_fourth_place_difference,
    limit_convergence,
    pq_positivity_scan,
    rho_bounds,
)

LAM = Fraction(5, 2)


def p_vector(e, *ks):
    return KVector(FamilyId.FamP, e, ks)


class TestCertificates:
    def test_minimizer_passes(self):
        report = certify_minimizer(36, 6, p_vector(6, 12, 12))
        assert report.passed
        assert report.failures == []
        assert report.s == 13
        assert [row.check for row in report.checks] == [
            "a-lower",
            "a-upper",
            "c-lower",
            "c-upper",
            "c-lower",
            "c-upper",
        ]
        assert [row.index for row in report.checks] == [0, 0, 1, 1, 2, 2]

    def test_middle_parts_use_the_middle_bounds(self):
        report = certify_minimizer(38, 7, p_vector(7, 8, 8, 8))
        assert report.passed
        assert {row.check for row in report.checks if row.index == 2} == {"b-lower", "b-upper"}

    def test_equality_case_is_tight(self):
        # (s-1, s-1) sits exactly on the lower bound of check (a)
        report = certify_minimizer(28, 6, p_vector(6, 8, 8))
        assert report.passed
        assert abs(report.checks[0].slack) <= report.tolerance

    @pytest.mark.parametrize("k", [8, 9, 10])
    def test_unbalanced_vectors_fail(self, k):
        report = certify_minimizer(2 * k + 12, 6, p_vector(6, k + 3, k - 3))
        assert not report.passed
        assert any(row.check.startswith("c-") for row in report.failures)

    @pytest.mark.slow
    @pytest.mark.parametrize("k", range(8, 18))
    def test_negative_controls(self, k):
        assert not certify_minimizer(2 * k + 12, 6, p_vector(6, k + 3, k - 3)).passed

    @pytest.mark.parametrize("ks", [(8, 8, 8, 8), (8, 8, 9, 7), (7, 9, 9, 7)])
    def test_tied_e8_minimizers_pass(self, ks):
        report = certify_minimizer(48, 8, p_vector(8, *ks))
        assert report.passed
        assert [row.index for row in report.checks] == [0, 0, 1, 1, 2, 2, 3, 3, 4, 4]

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "e,n",
        [(6, n) for n in range(28, 53)] + [(7, n) for n in range(38, 59)] + [(8, n) for n in range(48, 60)],
    )
    def test_found_minimizers_pass(self, e, n):
        for kv in family_min(n, e).argmin:
            assert certify_minimizer(n, e, kv).passed

    def test_rejects_other_families(self):
        with pytest.raises(InvalidDataError):
            certify_minimizer(16, 5, KVector(FamilyId.FamPPrime, 5, (3, 3)))

    def test_rejects_mismatched_order(self):
        with pytest.raises(InvalidDataError):
            certify_minimizer(30, 6, p_vector(6, 8, 8))


class TestPositivity:
    def test_nonnegative_at_the_radius(self):
        kv = p_vector(7, 4, 6, 3)
        rho = rho_tree(from_kvector(kv)).value
        rows = pq_positivity_scan(kv, rho + mpf("1e-20"))
        assert [(row.side, row.index) for row in rows] == [
            ("L", 0),
            ("L", 1),
            ("L", 2),
            ("R", 4),
            ("R", 3),
            ("R", 2),
        ]
        assert all(row.p >= 0 and row.q >= 0 for row in rows)

    def test_below_the_radius_warns(self, caplog):
        kv = p_vector(6, 10, 2)
        with caplog.at_level(logging.WARNING, logger="quipu.verify"):
            rows = pq_positivity_scan(kv, mpf("2.01"))
        assert len(rows) == 4
        assert "is below" in caplog.text


class TestLimitLemmas:
    @pytest.mark.parametrize("e", [6, 7, 8, 9])
    @pytest.mark.parametrize("k", [5, 8, 12])
    def test_balanced_tree_sits_on_the_limit_radius(self, e, k):
        ks = (k - 1,) + (k,) * (e - 6) + (k - 1,)
        rho_k = solve_limit_equation(LimitKind.RhoK, k).value
        assert abs(phi_kvector_at(p_vector(e, *ks), rho_k)) < mpf(10) ** -30

    def test_double_prime_convergence(self):
        table = limit_convergence(ConvergenceKind.DoublePrimeIKJ, 3, [10, 20, 40])
        assert table.monotone
        assert table.limit == solve_limit_equation(LimitKind.RhoDoublePrimeK, 3).value
        assert [row.size for row in table.rows] == [10, 20, 40]
        assert all(row.companion is None for row in table.rows)

    def test_prime_convergence(self):
        table = limit_convergence(ConvergenceKind.PrimeKJ, 4, [10, 20, 40])
        assert table.monotone
        assert table.limit == solve_limit_equation(LimitKind.RhoPrimeK, 4).value
        assert [row.size for row in table.rows] == [10, 20, 40]

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_swap_equality(self, k):
        table = limit_convergence(ConvergenceKind.CorollaryKI, k, range(4, 9))
        assert table.limit == solve_limit_equation(LimitKind.RhoDoublePrimeK, 2 * k + 3).value
        for row in table.rows:
            assert abs(row.rho - row.companion) < mpf(10) ** -30

    def test_sizes_must_increase(self):
        with pytest.raises(ValidationError):
            limit_convergence(ConvergenceKind.DoublePrimeIKJ, 3, [20, 10])

    def test_index_must_be_positive(self):
        with pytest.raises(ValidationError):
            limit_convergence(ConvergenceKind.PrimeKJ, 0, [5])


class TestClosedForms:
    @pytest.mark.parametrize("k", range(1, 7))
    def test_exact_differences(self, k):
        for check in (
            closed_form_e7_difference(k, LAM),
            closed_form_e8_difference(k, LAM),
            e8_fourth_place_difference(k, LAM),
        ):
            assert check.residual == 0
            assert check.lam == LAM

    @pytest.mark.parametrize("l,k", [(1, 1), (3, 2), (6, 4), (2, 5)])
    def test_double_prime(self, l, k):
        assert closed_form_double_prime(l, k, LAM).residual == 0

    @pytest.mark.parametrize("k,j", [(1, 1), (2, 5), (4, 1), (3, 3)])
    def test_prime(self, k, j):
        assert closed_form_prime(k, j, LAM).residual == 0

    def test_fourth_place_does_not_depend_on_k(self):
        assert e8_fourth_place_difference(2, LAM).direct == e8_fourth_place_difference(5, LAM).direct

    def test_irrational_lambda(self):
        checks = closed_form_checks("2.2")
        assert [check.name for check in checks] == [
            "e7-balanced-vs-shifted",
            "e8-runner-up",
            "e8-fourth-place",
            "double-prime-lkl",
            "prime-kj",
        ]
        for check in checks:
            assert check.residual <= mpf(10) ** -80 * max(1, abs(check.direct))


class TestProfile:
    def test_excess_shrinks(self):
        rows = asymptotic_profile(6, [28, 30, 32])
        assert [row.n for row in rows] == [28, 30, 32]
        assert all(row.excess > 0 for row in rows)
        assert rows[0].excess > rows[1].excess > rows[2].excess
        assert abs(rows[0].rho - rows[0].excess - lambda0()) < mpf(10) ** -90

    def test_bounds_enclose_the_minimum(self):
        bounds = rho_bounds(36, 6)
        assert bounds.k == 13
        rho = family_min(36, 6).rho.value
        assert bounds.lower < rho <= bounds.upper + mpf(10) ** -40

    def test_no_upper_bound_for_tiny_orders(self):
        bounds = rho_bounds(17, 8)
        assert bounds.k is None
        assert bounds.upper is None

    def test_bounds_need_e6(self):
        with pytest.raises(ValidationError):
            rho_bounds(30, 5)
