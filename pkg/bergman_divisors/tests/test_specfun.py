#!/usr/bin/env python3
"""
test_specfun.py — Gamma / Beta / incomplete Beta evaluation

Tests:
- ln Γ, β and Γ(a, b) against mpmath
- I(x; a, b) against mpmath, endpoints, symmetry, monotonicity
- Kernel tail F / R identities
- ϑ gap and sweep helpers
"""

from __future__ import annotations

import math
import unittest

import mpmath
import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from bergman_divisors.core.errors import DomainError, SpecialOverflowError
from bergman_divisors.core.specfun import (
    BetaParams,
    beta,
    beta_eval,
    find_a_eta,
    gamma_quantile_bound,
    gautschi_check,
    inc_gamma_upper,
    kernel_tail_F,
    kernel_tail_F_array,
    kernel_tail_R,
    local_energy_floor,
    local_energy_uniform_eps,
    log_beta,
    log_gamma,
    log_inc_beta,
    neg_binomial_coeff,
    ratio_bound,
    reg_inc_beta,
    reg_inc_beta_array,
    reg_inc_beta_eval,
    stirling_ratio,
    vartheta,
    vartheta_gap,
    vartheta_gap_limit,
    vartheta_minimizer,
)


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


class TestGammaBeta(unittest.TestCase):
    """ln Γ, β, Γ(a, b)."""

    @classmethod
    def setUpClass(cls) -> None:
        mpmath.mp.dps = 40

    def test_log_gamma_matches_mpmath(self):
        for x in (1e-3, 0.5, 1.0, 2.5, 10.0, 171.5, 1e4):
            with self.subTest(x=x):
                ref = float(mpmath.loggamma(x))
                self.assertLessEqual(abs(log_gamma(x) - ref), 1e-13 * max(1.0, abs(ref)))

    def test_log_gamma_rejects_nonpositive(self):
        for x in (0.0, -1.0, float("nan")):
            with self.subTest(x=x):
                with self.assertRaises(DomainError):
                    log_gamma(x)

    def test_beta_matches_mpmath(self):
        for a, b in ((0.5, 0.5), (2.0, 3.0), (10.0, 0.1), (40.0, 40.0)):
            with self.subTest(a=a, b=b):
                self.assertLess(_rel(beta(BetaParams(a, b)), float(mpmath.beta(a, b))), 1e-12)

    def test_beta_eval_carries_error_bound(self):
        res = beta_eval(BetaParams(3.0, 4.5))
        ref = float(mpmath.beta(3.0, 4.5))
        self.assertLessEqual(abs(res.value - ref), max(res.abs_error_bound, 1e-12 * ref))
        self.assertGreater(res.abs_error_bound, 0.0)

    def test_beta_overflow_is_reported(self):
        with self.assertRaises(SpecialOverflowError) as ctx:
            beta(BetaParams(2000.0, 2000.0))
        self.assertAlmostEqual(ctx.exception.log_value, log_beta(BetaParams(2000.0, 2000.0)))
        self.assertIsInstance(ctx.exception, OverflowError)

    def test_beta_params_reject_bad_shapes(self):
        for a, b in ((0.0, 1.0), (1.0, -2.0), (float("inf"), 1.0)):
            with self.subTest(a=a, b=b):
                with self.assertRaises(DomainError):
                    BetaParams(a, b)

    def test_inc_gamma_upper(self):
        self.assertLess(_rel(inc_gamma_upper(3.5, 0.0), math.gamma(3.5)), 1e-14)
        for a, b in ((2.5, 1.3), (0.7, 4.0), (30.0, 25.0)):
            with self.subTest(a=a, b=b):
                self.assertLess(_rel(inc_gamma_upper(a, b), float(mpmath.gammainc(a, b))), 1e-12)


class TestIncompleteBeta(unittest.TestCase):
    """Regularized incomplete Beta I(x; a, b)."""

    CASES = (
        (0.3, 2.0, 3.0),
        (0.9, 50.0, 0.5),
        (0.01, 0.1, 40.0),
        (0.5, 25.0, 25.0),
        (0.999, 10.0, 1.0),
        (0.75, 0.5, 0.5),
        (0.2, 1.0, 1.0),
    )

    @classmethod
    def setUpClass(cls) -> None:
        mpmath.mp.dps = 40

    def test_matches_mpmath(self):
        for x, a, b in self.CASES:
            with self.subTest(x=x, a=a, b=b):
                ref = float(mpmath.betainc(a, b, 0, x, regularized=True))
                self.assertLessEqual(abs(reg_inc_beta(x, BetaParams(a, b)) - ref), 1e-12)

    def test_uniform_case_is_identity(self):
        for x in np.linspace(0.0, 1.0, 11):
            with self.subTest(x=float(x)):
                self.assertAlmostEqual(reg_inc_beta(float(x), BetaParams(1.0, 1.0)), float(x), places=14)

    def test_endpoints(self):
        p = BetaParams(3.0, 4.5)
        self.assertEqual(reg_inc_beta(0.0, p), 0.0)
        self.assertEqual(reg_inc_beta(1.0, p), 1.0)

    def test_x_outside_unit_interval_raises(self):
        for x in (-0.1, 1.1):
            with self.subTest(x=x):
                with self.assertRaises(DomainError):
                    reg_inc_beta(x, BetaParams(2.0, 2.0))

    def test_log_form_consistent(self):
        for x, a, b in self.CASES:
            with self.subTest(x=x, a=a, b=b):
                p = BetaParams(a, b)
                expected = math.log(reg_inc_beta(x, p)) + log_beta(p)
                self.assertLess(abs(log_inc_beta(x, p) - expected), 1e-10 * max(1.0, abs(expected)))

    def test_eval_result_carries_bound(self):
        res = reg_inc_beta_eval(0.4, BetaParams(3.0, 5.0))
        self.assertEqual(res.value, reg_inc_beta(0.4, BetaParams(3.0, 5.0)))
        self.assertGreater(res.abs_error_bound, 0.0)
        self.assertEqual(set(res.to_dict()), {"value", "abs_error_bound"})

    @settings(max_examples=200, deadline=None)
    @given(
        x=st.floats(min_value=0.0, max_value=1.0),
        a=st.floats(min_value=0.05, max_value=50.0),
        b=st.floats(min_value=0.05, max_value=50.0),
    )
    def test_symmetry(self, x, a, b):
        total = reg_inc_beta(x, BetaParams(a, b)) + reg_inc_beta(1.0 - x, BetaParams(b, a))
        self.assertLessEqual(abs(total - 1.0), 1e-12)

    @settings(max_examples=50, deadline=None)
    @given(a=st.floats(min_value=0.1, max_value=40.0), b=st.floats(min_value=0.1, max_value=40.0))
    def test_monotone_in_x(self, a, b):
        values = reg_inc_beta_array(np.linspace(0.0, 1.0, 101), a, b)
        self.assertGreaterEqual(float(np.diff(values).min()), -1e-12)


class TestKernelTail(unittest.TestCase):
    """F_{m,α}(t) and R_{m,α}(t) = 1 - F."""

    def test_tail_at_origin(self):
        for m in (1, 3, 20):
            with self.subTest(m=m):
                self.assertEqual(kernel_tail_F(m, 1.0, 0.0), 1.0)
                self.assertEqual(kernel_tail_R(m, 1.0, 0.0), 0.0)

    def test_complement_identity(self):
        for alpha in (-0.5, 0.0, 1.0, 2.5):
            for m in (1, 2, 7, 40):
                for t in (0.1, 0.5, 0.9):
                    with self.subTest(alpha=alpha, m=m, t=t):
                        total = kernel_tail_F(m, alpha, t) + kernel_tail_R(m, alpha, t)
                        self.assertLessEqual(abs(total - 1.0), 1e-12)

    def test_closed_form_matches_direct_sum(self):
        ms = np.array([1, 5, 50], dtype=float)
        t = np.array([0.1, 0.5, 0.9])
        for alpha in (0.0, 1.0):
            grid = kernel_tail_F_array(ms[:, None], alpha, t[None, :])
            for i, m in enumerate(ms):
                for k, tv in enumerate(t):
                    with self.subTest(alpha=alpha, m=m, t=tv):
                        self.assertLessEqual(abs(grid[i, k] - kernel_tail_F(int(m), alpha, float(tv))), 1e-10)

    def test_single_term(self):
        # F_{1,α}(t) = (1-t²)^{α+2}
        self.assertAlmostEqual(kernel_tail_F(1, 1.0, 0.6), 0.64 ** 3, places=14)

    def test_bad_arguments(self):
        with self.assertRaises(DomainError):
            kernel_tail_F(0, 1.0, 0.5)
        with self.assertRaises(DomainError):
            kernel_tail_F(2, -1.0, 0.5)
        with self.assertRaises(DomainError):
            kernel_tail_R(2, 1.0, 1.0)

    def test_gamma_quantile_bound(self):
        q, eps = gamma_quantile_bound(1.0)
        self.assertAlmostEqual(q, 2.5 / math.e, places=12)
        self.assertAlmostEqual(eps, 0.5 * (1 - 2.5 / math.e), places=12)
        self.assertEqual(gamma_quantile_bound(0.0), (1.0, 0.0))


class TestVartheta(unittest.TestCase):
    """ϑ_{m,α} and the A^∞ radius gap."""

    def test_infinite_at_zero(self):
        self.assertEqual(vartheta(3, 1.0, 0.0), math.inf)

    def test_minimizer(self):
        for m, alpha in ((1, 1.0), (5, 2.0), (40, 0.5)):
            with self.subTest(m=m, alpha=alpha):
                t = vartheta_minimizer(m, alpha)
                for dt in (-1e-3, 1e-3):
                    self.assertLess(vartheta(m, alpha, t), vartheta(m, alpha, t + dt))

    def test_gap_limit(self):
        for alpha, c in ((1.0, 10.0), (0.5, 5.0)):
            with self.subTest(alpha=alpha, c=c):
                self.assertLess(abs(vartheta_gap(10 ** 6, alpha, c) - vartheta_gap_limit(alpha, c)), 1e-3)
        self.assertAlmostEqual(vartheta_gap_limit(1.0, 10.0), 5.0 - 0.5 * math.log(11.0), places=12)

    def test_gap_limit_is_not_the_doubled_constant_form(self):
        # C/2 - (α/2)ln((α+2C)/α) undershoots the m -> ∞ gap by (α/2)ln((α+2C)/(α+C))
        for alpha, c in ((1.0, 10.0), (0.5, 5.0)):
            with self.subTest(alpha=alpha, c=c):
                doubled = 0.5 * c - 0.5 * alpha * math.log((alpha + 2 * c) / alpha)
                offset = 0.5 * alpha * math.log((alpha + 2 * c) / (alpha + c))
                self.assertLess(abs(vartheta_gap(10 ** 6, alpha, c) - doubled - offset), 1e-3)
                self.assertGreater(offset, 0.1)

    def test_gap_needs_m_above_c(self):
        with self.assertRaises(DomainError):
            vartheta_gap(3, 1.0, 3.0)

    def test_alpha_must_be_positive(self):
        with self.assertRaises(DomainError):
            vartheta(2, 0.0, 0.5)


class TestSweepHelpers(unittest.TestCase):
    """Stirling, Gautschi, local energy, dilation ratio, negative binomial."""

    def test_stirling_ratio_tends_to_one(self):
        for alpha in (-0.5, 0.0, 1.0, 2.0):
            with self.subTest(alpha=alpha):
                self.assertLess(abs(stirling_ratio(10 ** 5, alpha) - 1.0), 1e-3)
                self.assertLess(abs(stirling_ratio(10 ** 5, alpha) - 1.0), abs(stirling_ratio(10, alpha) - 1.0))

    def test_gautschi(self):
        for x in (1e-3, 0.5, 3.0, 1e3):
            for s in (0.05, 0.5, 0.95):
                with self.subTest(x=x, s=s):
                    self.assertTrue(gautschi_check(x, s))
        with self.assertRaises(DomainError):
            gautschi_check(1.0, 1.0)

    def test_local_energy_floor_is_a_lower_bound(self):
        for alpha in (-0.5, 0.0, 1.0, 2.0):
            for c in (1.0, 2.0):
                for n in range(int(c) + 1, 60, 7):
                    with self.subTest(alpha=alpha, c=c, n=n):
                        x = (n - c) / (n + alpha + 1)
                        actual = reg_inc_beta(x, BetaParams(n + 1, alpha + 1))
                        self.assertLessEqual(local_energy_floor(alpha, c, n), actual * (1 + 1e-9))

    def test_uniform_eps_only_for_nonpositive_alpha(self):
        self.assertIsNone(local_energy_uniform_eps(1.0, 1.0))
        eps = local_energy_uniform_eps(-0.5, 1.0)
        self.assertIsNotNone(eps)
        self.assertGreater(eps, 0.0)

    def test_find_a_eta(self):
        sweep = find_a_eta(1.0, 0.1, m_max=50)
        self.assertIsNotNone(sweep.a)
        self.assertLessEqual(sweep.max_ratio, 0.1)
        self.assertGreaterEqual(ratio_bound(1.0, sweep.a), sweep.max_ratio * (1 - 1e-12))
        tighter = find_a_eta(1.0, 0.05, m_max=50)
        self.assertGreaterEqual(tighter.a, sweep.a)
        self.assertEqual(set(sweep.to_dict()), {"alpha", "eta", "a", "max_ratio", "worst_m", "worst_j", "m_max"})

    def test_find_a_eta_rejects_bad_eta(self):
        with self.assertRaises(DomainError):
            find_a_eta(1.0, 0.0, m_max=20)

    def test_neg_binomial_at_alpha_one(self):
        # binom(-1, n) = (-1)^n
        for n in (1, 2, 10, 1000):
            with self.subTest(n=n):
                self.assertAlmostEqual(neg_binomial_coeff(1.0, n), (-1) ** n, places=10)


if __name__ == "__main__":
    unittest.main(verbosity=2)
