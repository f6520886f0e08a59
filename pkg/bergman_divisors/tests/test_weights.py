#!/usr/bin/env python3
"""
test_weights.py — ∂̄-weight ingredients and the Jensen budget

Tests:
- Constraint windows of the weight modes
- K closed form against quadrature, ξ mass
- Subharmonic patch: continuity, matching slopes, Laplacian mass
- Radial weight w and its invariant Laplacian
- Preconditions and the Jensen budget
"""

from __future__ import annotations

import math
import unittest

from scipy import integrate

from bergman_divisors.core.divisor import Divisor, DivisorPoint, PSpace
from bergman_divisors.core.errors import ConstraintError, DomainError, PreconditionError, ResolutionError
from bergman_divisors.core.weights import (
    K_constant,
    K_lower_bound,
    K_quadrature,
    WeightMode,
    WeightParams,
    cutoff_gradient_bound,
    dbar_ingredient_bounds,
    inner_radius,
    invariant_laplacian_fd,
    jensen_budget,
    mass_check,
    ohsawa_curvature_floor,
    ohsawa_weight,
    outer_radius,
    patch_branches,
    patch_radial_slopes,
    patch_region,
    patch_v,
    radial_weight_laplacian,
    weight_profile,
    weight_w,
    xi,
    xi_mass,
)

P2 = WeightParams(1.0, 1.5, WeightMode.DBAR_P2)
PINF = WeightParams(2.0, 1.5, WeightMode.DBAR_PINF)
UNIQUE = WeightParams(1.0, 0.5, WeightMode.UNIQUENESS_EPS)


class TestWeightParams(unittest.TestCase):
    """Mode windows and exponents."""

    def test_exponents(self):
        self.assertEqual(P2.exponent, 2.0)
        self.assertEqual(PINF.exponent, 2.0)
        self.assertEqual(UNIQUE.exponent, 1.5)
        self.assertIs(PINF.p, PSpace.INFINITY)
        self.assertIs(UNIQUE.p, PSpace.TWO)

    def test_windows(self):
        bad = [
            (1.0, 1.0, WeightMode.DBAR_P2),
            (1.0, 2.0, WeightMode.DBAR_P2),
            (2.0, 2.5, WeightMode.DBAR_PINF),
            (0.0, 0.5, WeightMode.DBAR_PINF),
        ]
        for alpha, c, mode in bad:
            with self.subTest(alpha=alpha, c=c, mode=mode.value):
                with self.assertRaises(ConstraintError):
                    WeightParams(alpha, c, mode)

    def test_domain(self):
        with self.assertRaises(DomainError):
            WeightParams(-1.0, 0.5, WeightMode.UNIQUENESS_EPS)
        with self.assertRaises(DomainError):
            WeightParams(1.0, 0.0, WeightMode.UNIQUENESS_EPS)

    def test_outer_radius_needs_dbar_mode(self):
        with self.assertRaises(ConstraintError):
            outer_radius(3, UNIQUE)
        self.assertAlmostEqual(outer_radius(3, P2), math.sqrt(4.5 / 5), places=15)
        self.assertAlmostEqual(inner_radius(3, P2), math.sqrt(3 / 5), places=15)


class TestKConstant(unittest.TestCase):
    """K and ξ."""

    def test_closed_form_matches_quadrature(self):
        for params in (P2, PINF):
            for m in (1, 5, 50, 500):
                with self.subTest(mode=params.mode.value, m=m):
                    closed = K_constant(m, params.constant, params.alpha, params.mode)
                    quad = K_quadrature(m, params.constant, params.alpha, params.mode)
                    self.assertLess(abs(closed - quad), 1e-10 * closed)

    def test_exceeds_one(self):
        for m in (1, 10, 1000):
            with self.subTest(m=m):
                k = K_constant(m, P2.constant, P2.alpha, P2.mode)
                self.assertGreater(k, K_lower_bound(P2.constant, P2.alpha, P2.mode))
                self.assertGreater(K_lower_bound(P2.constant, P2.alpha, P2.mode), 1.0)

    def test_uniqueness_mode_has_no_K(self):
        with self.assertRaises(ConstraintError):
            K_constant(1, 0.5, 1.0, WeightMode.UNIQUENESS_EPS)

    def test_xi_mass_is_one(self):
        for m in (1, 7, 100):
            with self.subTest(m=m):
                self.assertLess(abs(xi_mass(weight_profile(0.2j, m, P2)) - 1.0), 1e-9)

    def test_xi_support(self):
        profile = weight_profile(0j, 3, P2)
        self.assertEqual(xi(0.5, profile), 0.0)
        self.assertEqual(xi(0.99, profile), 0.0)
        self.assertGreater(xi(0.9, profile), 0.0)
        with self.assertRaises(DomainError):
            xi(1.0, profile)


class TestPatch(unittest.TestCase):
    """Subharmonic patch v."""

    def test_branches_agree_on_boundary(self):
        r = inner_radius(4, P2)
        inside, outside = patch_branches(r, 0j, 4, P2)
        self.assertAlmostEqual(inside, 0.0, places=14)
        self.assertAlmostEqual(outside, 0.0, places=14)

    def test_continuity_across_boundary(self):
        lam = 0.4 + 0.1j
        r = inner_radius(5, P2)
        for delta in (1e-6, 1e-8):
            with self.subTest(delta=delta):
                a_in, a_out = r - delta, r + delta
                # points on the ray from λ at pseudohyperbolic distance a
                z_in = (lam - a_in) / (1 - lam.conjugate() * a_in)
                z_out = (lam - a_out) / (1 - lam.conjugate() * a_out)
                self.assertLess(abs(patch_v(z_in, lam, 5, P2) - patch_v(z_out, lam, 5, P2)), 100 * delta)

    def test_slopes_match(self):
        for params in (P2, PINF, UNIQUE):
            for m in (1, 4, 60):
                with self.subTest(mode=params.mode.value, m=m):
                    s = patch_radial_slopes(m, params)
                    self.assertLess(abs(s.inside / s.exact - 1), 1e-3)
                    self.assertLess(abs(s.outside / s.exact - 1), 1e-3)

    def test_laplacian_inside_and_outside(self):
        lam, m = 0.3, 3
        region = patch_region(lam, m, P2)
        field = lambda z: patch_v(z, lam, m, P2)  # noqa: E731
        inside = invariant_laplacian_fd(field, 0.35, region=region)
        self.assertTrue(inside.valid)
        self.assertLess(abs(inside.value - 2 * P2.exponent), 1e-4 * 2 * P2.exponent)
        outside = invariant_laplacian_fd(field, -0.7, region=region)
        self.assertTrue(outside.valid)
        self.assertLess(abs(outside.value), 1e-5)

    def test_stencil_across_boundary_is_invalid(self):
        lam, m = 0j, 3
        r = inner_radius(m, P2)
        est = invariant_laplacian_fd(lambda z: patch_v(z, lam, m, P2), r, h=1e-3, region=patch_region(lam, m, P2))
        self.assertFalse(est.valid)
        self.assertIsNone(est.to_dict()["value"])

    def test_mass(self):
        for m in (1, 6):
            with self.subTest(m=m):
                res = mass_check(0.5j, m, P2)
                self.assertLess(abs(res.mass_patch - 2 * m), 1e-12 * m)
                self.assertEqual(res.mass_log, 2.0 * m)
                self.assertLess(abs(res.mass_quadrature - 2 * m), 1e-6 * m)


class TestWeight(unittest.TestCase):
    """Radial weight w on a separated divisor."""

    @classmethod
    def setUpClass(cls) -> None:
        cls.divisor = Divisor(1.0, PSpace.TWO, (DivisorPoint(0j, 3),))
        cls.profile = weight_profile(0j, 3, P2)

    def test_vanishes_outside_dilated_disk(self):
        self.assertEqual(weight_w(0.96, self.divisor, P2), 0.0)
        self.assertAlmostEqual(weight_w(self.profile.r_outer - 1e-9, self.divisor, P2), 0.0, places=6)

    def test_non_positive(self):
        for z in (0.1, 0.5j, 0.8, -0.9, 0.94j):
            with self.subTest(z=z):
                self.assertLessEqual(weight_w(z, self.divisor, P2), 0.0)

    def test_laplacian_on_annulus(self):
        for a in (0.8, 0.87, 0.93):
            with self.subTest(a=a):
                est = invariant_laplacian_fd(lambda z: weight_w(z, self.divisor, P2), a)
                exact = radial_weight_laplacian(a, self.profile)
                self.assertTrue(est.valid)
                self.assertLess(abs(est.value - exact), 1e-3 * abs(exact))

    def test_harmonic_inside_inner_disk(self):
        # m ln|z|² minus a constant potential
        est = invariant_laplacian_fd(lambda z: weight_w(z, self.divisor, P2), 0.4)
        self.assertLess(abs(est.value), 1e-4)

    def test_ohsawa_weight_and_floor(self):
        z = 0.5
        expected = -P2.exponent * math.log1p(-0.25) + weight_w(z, self.divisor, P2)
        self.assertAlmostEqual(ohsawa_weight(z, self.divisor, P2), expected, places=14)
        k = self.profile.K_value
        self.assertAlmostEqual(ohsawa_curvature_floor(P2, k), 4 * 2.0 * (1 - 1 / k), places=14)
        self.assertGreater(ohsawa_curvature_floor(P2, k), 0.0)

    def test_preconditions(self):
        close = Divisor(1.0, PSpace.TWO, (DivisorPoint(0j, 1), DivisorPoint(0.1, 1)))
        with self.assertRaises(PreconditionError):
            weight_w(0.5, close, P2)
        with self.assertRaises(DomainError):
            weight_w(0.5, Divisor(2.0, PSpace.TWO, (DivisorPoint(0j, 1),)), P2)
        with self.assertRaises(ConstraintError):
            weight_w(0.5, self.divisor, UNIQUE)

    def test_dbar_ingredients(self):
        d = Divisor(1.0, PSpace.TWO, (DivisorPoint(0j, 3), DivisorPoint(0.999, 40)))
        report = dbar_ingredient_bounds(d, P2)
        self.assertTrue(report.holds)
        self.assertEqual([row.m for row in report.rows], [3, 40])
        self.assertEqual(set(report.to_dict()), {"rows", "separated", "holds"})

    def test_cutoff_gradient_at_center(self):
        r, r1 = self.profile.r_inner, self.profile.r_outer
        self.assertAlmostEqual(cutoff_gradient_bound(0j, 0j, r, r1), 0.5 / (r1 - r), places=14)


class TestJensenBudget(unittest.TestCase):
    """∫ Σ χ_D ln(r/|z|) dν against α_∞/(2(α_∞+ε))·ln(1/(1-r²))."""

    def test_single_centered_disk(self):
        d = Divisor(1.0, PSpace.INFINITY, (DivisorPoint(0j, 1),))
        params = WeightParams(1.0, 0.5, WeightMode.UNIQUENESS_EPS)
        r = 0.5
        budget = jensen_budget(d, params, r)
        expected, _ = integrate.quad(lambda t: 2 * t * math.log(r / t) / (1 - t * t) ** 2, 0.0, r, epsrel=1e-12)
        self.assertLess(abs(budget.lhs - expected), 1e-9)
        log_term = -math.log1p(-r * r)
        self.assertAlmostEqual(budget.rhs, 1.0 / (2 * 1.5) * log_term, places=14)
        self.assertAlmostEqual(budget.normalized, budget.lhs / log_term, places=14)

    def test_p2_uses_shifted_alpha(self):
        d = Divisor(1.0, PSpace.TWO)
        budget = jensen_budget(d, UNIQUE, 0.9)
        self.assertEqual(budget.lhs, 0.0)
        self.assertAlmostEqual(budget.rhs, 3.0 / (2 * 3.5) * -math.log1p(-0.81), places=14)

    def test_errors(self):
        d = Divisor(1.0, PSpace.TWO)
        with self.assertRaises(ConstraintError):
            jensen_budget(d, P2, 0.5)
        with self.assertRaises(DomainError):
            jensen_budget(d, UNIQUE, 1.0)
        with self.assertRaises(ResolutionError):
            jensen_budget(d, UNIQUE, 1 - 1e-10)
        with self.assertRaises(DomainError):
            jensen_budget(Divisor(2.0, PSpace.TWO), UNIQUE, 0.5)


if __name__ == "__main__":
    unittest.main(verbosity=2)
