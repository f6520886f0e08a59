#!/usr/bin/env python3
"""
test_suite.py — Lemma suite runner

Tests:
- Property registry and SUITE_SPEC.md stay in sync
- SweepConfig validation, quick preset
- Selected properties pass on the quick sweep
- Score rule, error capture, deterministic reports
"""

from __future__ import annotations

import unittest
from pathlib import Path

import numpy as np

from bergman_divisors.core.errors import ConstraintError, DomainError
from bergman_divisors.core.io import dumps_json
from bergman_divisors.suite import PROPERTIES, LemmaSuite, SweepConfig, Verdict
from bergman_divisors.suite.lemma_suite import GAUTSCHI_S, GAUTSCHI_X, PATCH_MULTIPLICITIES

CHEAP_CODES = ["L002", "L004", "L015", "L017"]


def _repo_root() -> Path:
    return Path(__file__).resolve().parents[2]


class _FailingSuite(LemmaSuite):
    def _check_gautschi_grid(self, rng):
        return ["forced failure"], {"forced": True}

    def _check_radius_shift(self, rng):
        raise DomainError("forced error")


class TestRegistry(unittest.TestCase):
    """PROPERTIES table."""

    def test_codes_are_sequential(self):
        codes = [code for code, _, _ in PROPERTIES]
        self.assertEqual(codes, [f"L{k:03d}" for k in range(1, len(codes) + 1)])

    def test_methods_exist(self):
        for code, _, method in PROPERTIES:
            with self.subTest(code=code):
                self.assertTrue(callable(getattr(LemmaSuite, method, None)))

    def test_registry_documented(self):
        text = (_repo_root() / "bergman_divisors" / "suite" / "SUITE_SPEC.md").read_text(encoding="utf-8")
        for code, name, _ in PROPERTIES:
            with self.subTest(code=code):
                self.assertIn(code, text)
                self.assertIn(name, text)


class TestSweepConfig(unittest.TestCase):
    """SweepConfig presets and validation."""

    def test_quick_caps_multiplicities(self):
        quick = SweepConfig.quick()
        self.assertEqual((quick.m_max, quick.kernel_m_max, quick.dilation_m_max), (20, 20, 20))
        self.assertEqual(SweepConfig.default(), SweepConfig())
        self.assertEqual(quick.seed, SweepConfig().seed)

    def test_rejects(self):
        bad = [
            {"eta": 0.0},
            {"alphas": (-1.0,)},
            {"cs": ()},
            {"m_max": 1},
            {"jensen_radii": (0.5,)},
            {"epsilon": 0.0},
        ]
        for kwargs in bad:
            with self.subTest(**{k: str(v) for k, v in kwargs.items()}):
                with self.assertRaises(DomainError):
                    SweepConfig(**kwargs)

    def test_weight_constant_outside_window(self):
        with self.assertRaises(ConstraintError):
            LemmaSuite(SweepConfig(weight_constant=0.5))

    def test_unknown_code(self):
        with self.assertRaises(DomainError):
            LemmaSuite(SweepConfig.quick(), codes=["L999"])


class TestQuickRun(unittest.TestCase):
    """A cheap subset of the quick sweep."""

    @classmethod
    def setUpClass(cls) -> None:
        cls.result = LemmaSuite(SweepConfig.quick(), codes=CHEAP_CODES).run()

    def test_all_pass(self):
        for r in self.result.results:
            with self.subTest(code=r.code):
                self.assertIs(r.verdict, Verdict.PASS, r.message)
        self.assertTrue(self.result.passed)
        self.assertEqual(self.result.score, 100)

    def test_only_selected_codes_run(self):
        self.assertEqual([r.code for r in self.result.results], CHEAP_CODES)

    def test_report_is_deterministic(self):
        again = LemmaSuite(SweepConfig.quick(), codes=CHEAP_CODES).run()
        self.assertEqual(dumps_json(again.to_dict()), dumps_json(self.result.to_dict()))

    def test_report_omits_timing(self):
        entry = self.result.to_dict()["results"][0]
        self.assertEqual(set(entry), {"code", "name", "verdict", "message", "constants"})
        self.assertEqual(self.result.to_dict()["config"]["m_max"], 20)


class TestSweepCoverage(unittest.TestCase):
    """Grid extents and sample counts of the Gautschi and weight sweeps."""

    @classmethod
    def setUpClass(cls) -> None:
        cls.suite = LemmaSuite(SweepConfig.quick(), codes=["L004", "L012"])

    def test_gautschi_grid_extent(self):
        self.assertAlmostEqual(float(GAUTSCHI_X[0]), 1e-2, places=15)
        self.assertAlmostEqual(float(GAUTSCHI_X[-1]) / 1e4, 1.0, places=12)
        np.testing.assert_allclose(GAUTSCHI_S, [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])
        failures, constants = self.suite._check_gautschi_grid(np.random.default_rng(0))
        self.assertEqual(failures, [])
        self.assertEqual(constants["grid_points"], 61 * 9)

    def test_patch_continuity_samples(self):
        constants = {}
        failures = self.suite._patch_findings(self.suite.params_unique, constants)
        self.assertEqual(failures, [])
        self.assertEqual(constants["patch_boundary_samples"], 360 * len(PATCH_MULTIPLICITIES))
        self.assertLessEqual(constants["patch_jump"], 1e-10)
        self.assertLessEqual(constants["slope_rel_err"], 1e-6)

    def test_weight_annulus_samples(self):
        constants = {}
        failures = self.suite._weight_w_findings(self.suite.params_p2, constants)
        self.assertEqual(failures, [])
        report = constants["dbar_p2"]
        self.assertGreaterEqual(report["annulus_samples"], 1000)
        self.assertLessEqual(report["max_minus_w"], self.suite.params_p2.exponent * (1 + 1e-12))


class TestScoring(unittest.TestCase):
    """Failures and errors lower the score."""

    def test_failure_and_error(self):
        result = _FailingSuite(SweepConfig.quick(), codes=["L002", "L004", "L015"]).run()
        by_code = {r.code: r for r in result.results}
        self.assertTrue(by_code["L002"].passed)
        self.assertEqual(by_code["L004"].message, "forced failure")
        self.assertEqual(by_code["L015"].message, "error: forced error")
        self.assertFalse(result.passed)
        self.assertEqual(result.score, 30)


if __name__ == "__main__":
    unittest.main(verbosity=2)
