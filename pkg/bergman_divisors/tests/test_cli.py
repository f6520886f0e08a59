#!/usr/bin/env python3
"""
test_cli.py — Command-line gates

Tests:
- Exit codes 0 / 1 / 2 / 3 for every subcommand
- Reports are byte-identical across reruns
- check on the shipped fixture matches fixtures/lattice_report.json
- threshold-sweep: one row per C, pool and sequential runs agree
- Sweep helpers and RunConfig validation (in process)
"""

from __future__ import annotations

import hashlib
import json
import os
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path
from typing import List

from bergman_divisors.core.errors import DomainError
from bergman_divisors.core.io import dumps_json, load_divisor, load_fixture, read_csv
from bergman_divisors.tools.cli import RunConfig, build_parser
from bergman_divisors.tools.sweeps import SWEEP_COLUMNS, SweepTask, flip_points, parse_range, sweep_row


def _repo_root() -> Path:
    return Path(__file__).resolve().parents[2]


REPO_ROOT = _repo_root()
FIXTURE = REPO_ROOT / "bergman_divisors" / "fixtures" / "lattice_fixture.json"
GOLDEN_REPORT = REPO_ROOT / "bergman_divisors" / "fixtures" / "lattice_report.json"
REGEN_ENV = "BERGMAN_REGEN_GOLDEN"


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _run(args: List[str]) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "bergman_divisors.tools.cli", *args],
        cwd=REPO_ROOT,
        capture_output=True,
        text=True,
    )


class _TempDirCase(unittest.TestCase):
    def setUp(self) -> None:
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self) -> None:
        self._tmp.cleanup()

    def _write_json(self, name: str, data) -> Path:
        path = self.tmp / name
        path.write_text(json.dumps(data, indent=2), encoding="utf-8")
        return path


class TestCheckCommand(_TempDirCase):
    """check on the shipped fixture and on divisor files."""

    def test_required_critical_passes(self):
        out = self.tmp / "a"
        proc = _run(["check", "--fixture", str(FIXTURE), "--require", "covering:critical", "--out", str(out)])
        self.assertEqual(proc.returncode, 0, proc.stdout + proc.stderr)
        self.assertIn("✓ PASS covering:critical", proc.stdout)
        report = json.loads((out / "condition_report.json").read_text(encoding="utf-8"))
        self.assertTrue(report["passed"])
        self.assertEqual(report["required"], ["covering:critical"])
        self.assertFalse(report["verdicts"]["covering:dilated_minus"])
        self.assertEqual(report["input"]["sha256"], _sha256(FIXTURE))
        header, rows = read_csv(out / "condition_report.csv")
        self.assertEqual(header, "# schema: condition_report v1.0.0")
        self.assertIn("covering:critical", [row["check"] for row in rows])

    def test_all_checks_required_by_default(self):
        proc = _run(["check", "--fixture", str(FIXTURE), "--out", str(self.tmp / "b")])
        self.assertEqual(proc.returncode, 1, proc.stdout + proc.stderr)
        self.assertIn("✗ FAIL covering:dilated_minus", proc.stdout)

    def test_reruns_are_byte_identical(self):
        for name in ("r1", "r2"):
            proc = _run(["check", "--fixture", str(FIXTURE), "--require", "covering:critical",
                         "--out", str(self.tmp / name)])
            self.assertEqual(proc.returncode, 0, proc.stderr)
        for report in ("condition_report.json", "condition_report.csv"):
            with self.subTest(report=report):
                self.assertEqual(_sha256(self.tmp / "r1" / report), _sha256(self.tmp / "r2" / report))

    def test_unknown_require_id(self):
        proc = _run(["check", "--fixture", str(FIXTURE), "--require", "covering:bogus", "--out", str(self.tmp)])
        self.assertEqual(proc.returncode, 2)
        self.assertIn("[FATAL]", proc.stderr)

    def test_malformed_json_reports_line(self):
        bad = self.tmp / "bad.json"
        bad.write_text('{\n  "alpha": 1.0,\n  "p": "2",\n  "points": [\n}\n', encoding="utf-8")
        proc = _run(["check", "--input", str(bad), "--out", str(self.tmp)])
        self.assertEqual(proc.returncode, 2)
        self.assertIn("line 5", proc.stderr)

    def test_schema_violation(self):
        path = self._write_json("d.json", {"alpha": 1.0, "p": "2", "points": [{"re": 0.1, "im": 0.0}]})
        proc = _run(["check", "--input", str(path), "--out", str(self.tmp)])
        self.assertEqual(proc.returncode, 2)
        self.assertIn("schema violation", proc.stderr)

    def test_coarse_grid_is_resolution_error(self):
        proc = _run(["check", "--fixture", str(FIXTURE), "--grid", "0.5", "--out", str(self.tmp)])
        self.assertEqual(proc.returncode, 3)

    def test_out_of_range_option(self):
        proc = _run(["check", "--fixture", str(FIXTURE), "--r-max", "1.5", "--out", str(self.tmp)])
        self.assertEqual(proc.returncode, 2)
        self.assertIn("r-max", proc.stderr)

    def test_divisor_input(self):
        path = self._write_json("one.json", {"alpha": 1.0, "p": "2", "points": [{"re": 0.0, "im": 0.0, "m": 3}]})
        proc = _run(["check", "--input", str(path), "--r-max", "0.5", "--require", "covering:critical",
                     "--out", str(self.tmp / "one")])
        self.assertEqual(proc.returncode, 0, proc.stdout + proc.stderr)
        report = json.loads((self.tmp / "one" / "condition_report.json").read_text(encoding="utf-8"))
        self.assertEqual(report["report"]["overlap_constant"], 1)
        self.assertEqual(report["input"]["file"], "one.json")

    def test_matches_committed_report(self):
        out = self.tmp / "golden"
        proc = _run(["check", "--fixture", str(FIXTURE), "--require", "covering:critical", "--out", str(out)])
        self.assertEqual(proc.returncode, 0, proc.stdout + proc.stderr)
        produced = (out / "condition_report.json").read_bytes()
        self.assertEqual(produced, dumps_json(json.loads(produced)).encode("utf-8"))
        if os.environ.get(REGEN_ENV) == "1":
            GOLDEN_REPORT.write_bytes(produced)
        if not GOLDEN_REPORT.exists():
            self.skipTest(f"{GOLDEN_REPORT.name} missing; rerun with {REGEN_ENV}=1 to write it")
        self.assertEqual(produced, GOLDEN_REPORT.read_bytes(),
                         f"check output drifted from {GOLDEN_REPORT.name}; rerun with {REGEN_ENV}=1 if intended")


class TestFrameAndInterpolate(_TempDirCase):
    """frame and interpolate."""

    def test_frame_stable(self):
        path = self._write_json("d.json", {"alpha": 1.0, "p": "2", "points": [{"re": 0.0, "im": 0.0, "m": 3}]})
        proc = _run(["frame", "--input", str(path), "--out", str(self.tmp)])
        self.assertEqual(proc.returncode, 0, proc.stdout + proc.stderr)
        report = json.loads((self.tmp / "frame_report.json").read_text(encoding="utf-8"))
        self.assertEqual(report["degrees"], [10, 20])
        self.assertTrue(report["stable"])
        self.assertAlmostEqual(report["bounds"][0]["upper"], 1.0, places=12)

    def test_frame_degree_too_small(self):
        path = self._write_json("d.json", {"alpha": 1.0, "p": "2", "points": [{"re": 0.9, "im": 0.0, "m": 1}]})
        proc = _run(["frame", "--input", str(path), "--degree", "2", "--out", str(self.tmp)])
        self.assertEqual(proc.returncode, 3)
        self.assertIn("--degree", proc.stderr)

    def test_interpolate(self):
        divisor = self._write_json("d.json", {"alpha": 1.0, "p": "2", "points": [
            {"re": 0.0, "im": 0.0, "m": 2}, {"re": 0.5, "im": 0.0, "m": 1}]})
        targets = self._write_json("t.json", {"0.0,0.0,0": [1.0, 0.0], "0.0,0.0,1": [0.0, 0.0],
                                              "0.5,0.0,0": [0.0, 0.0]})
        proc = _run(["interpolate", "--input", str(divisor), "--targets", str(targets), "--degree", "40",
                     "--out", str(self.tmp)])
        self.assertEqual(proc.returncode, 0, proc.stdout + proc.stderr)
        result = json.loads((self.tmp / "interpolation.json").read_text(encoding="utf-8"))
        self.assertTrue(result["solved"])
        self.assertLess(result["residual"], 1e-8)
        self.assertEqual(result["rank"], 3)

    def test_interpolate_needs_matching_targets(self):
        divisor = self._write_json("d.json", {"alpha": 1.0, "p": "2", "points": [{"re": 0.0, "im": 0.0, "m": 2}]})
        targets = self._write_json("t.json", {"0.0,0.0,0": [1.0, 0.0]})
        proc = _run(["interpolate", "--input", str(divisor), "--targets", str(targets), "--out", str(self.tmp)])
        self.assertEqual(proc.returncode, 2)
        proc = _run(["interpolate", "--input", str(divisor), "--out", str(self.tmp)])
        self.assertEqual(proc.returncode, 2)


class TestVerifyLemmas(_TempDirCase):
    """verify-lemmas."""

    def test_quick_subset_is_deterministic(self):
        for name in ("r1", "r2"):
            proc = _run(["verify-lemmas", "--quick", "--codes", "L002,L004", "--out", str(self.tmp / name)])
            self.assertEqual(proc.returncode, 0, proc.stdout + proc.stderr)
            self.assertIn("✓ PASS [L002]", proc.stdout)
        self.assertEqual(_sha256(self.tmp / "r1" / "lemma_report.json"), _sha256(self.tmp / "r2" / "lemma_report.json"))
        report = json.loads((self.tmp / "r1" / "lemma_report.json").read_text(encoding="utf-8"))
        self.assertEqual([r["code"] for r in report["results"]], ["L002", "L004"])
        self.assertEqual(report["score"], 100)

    def test_constant_outside_window(self):
        proc = _run(["verify-lemmas", "--quick", "--codes", "L002", "--constant", "0.5", "--out", str(self.tmp)])
        self.assertEqual(proc.returncode, 2)
        self.assertIn("dbar_p2", proc.stderr)

    def test_unknown_code(self):
        proc = _run(["verify-lemmas", "--quick", "--codes", "L999", "--out", str(self.tmp)])
        self.assertEqual(proc.returncode, 2)


class TestThresholdSweep(_TempDirCase):
    """threshold-sweep over the lattice fixture family."""

    ARGS = ["threshold-sweep", "--fixture", str(FIXTURE), "--sweep-c", "0:1.8:0.6"]

    def test_rows_and_pool_agree(self):
        outputs = {}
        for jobs in ("1", "2"):
            out = self.tmp / f"j{jobs}"
            proc = _run(self.ARGS + ["--jobs", jobs, "--out", str(out)])
            self.assertEqual(proc.returncode, 0, proc.stdout + proc.stderr)
            outputs[jobs] = out
        for report in ("threshold_sweep.csv", "threshold_sweep.json"):
            with self.subTest(report=report):
                self.assertEqual(_sha256(outputs["1"] / report), _sha256(outputs["2"] / report))
        header, rows = read_csv(outputs["1"] / "threshold_sweep.csv")
        self.assertEqual(header, "# schema: threshold_sweep v1.0.0")
        self.assertEqual([float(r["c"]) for r in rows], [0.0, 0.6, 1.2, 1.8])
        self.assertEqual(list(rows[0]), list(SWEEP_COLUMNS))

    def test_constant_beyond_shift(self):
        proc = _run(["threshold-sweep", "--fixture", str(FIXTURE), "--sweep-c", "0:2:1", "--out", str(self.tmp)])
        self.assertEqual(proc.returncode, 2)

    def test_bad_range(self):
        proc = _run(["threshold-sweep", "--fixture", str(FIXTURE), "--sweep-c", "1:0:0.1", "--out", str(self.tmp)])
        self.assertEqual(proc.returncode, 2)


class TestLatticeCommand(_TempDirCase):
    """lattice writes a loadable divisor file."""

    def test_writes_divisor(self):
        proc = _run(["lattice", "--fixture", str(FIXTURE), "--out", str(self.tmp)])
        self.assertEqual(proc.returncode, 0, proc.stdout + proc.stderr)
        d, _ = load_divisor(self.tmp / "lattice_fixture_divisor.json")
        self.assertGreater(len(d), 1)
        self.assertEqual(d.alpha, 1.0)


class TestSweepHelpers(unittest.TestCase):
    """parse_range, sweep_row, flip_points."""

    def test_parse_range(self):
        self.assertEqual(parse_range("0:1:0.25"), [0.0, 0.25, 0.5, 0.75, 1.0])
        self.assertEqual(parse_range("0.5:0.5:0.1"), [0.5])
        self.assertEqual(len(parse_range("0:1.8:0.1")), 19)
        for text in ("0:1", "a:b:c", "0:1:0", "1:0:0.1", "0:inf:1"):
            with self.subTest(text=text):
                with self.assertRaises(DomainError):
                    parse_range(text)

    def test_sweep_row(self):
        data, _ = load_fixture(FIXTURE)
        row = sweep_row(SweepTask(0.6, data, None, 0.9, 0.0, None))
        self.assertEqual(row["c"], 0.6)
        self.assertGreater(row["points"], 1)
        self.assertEqual(row["frame_lower"], "")
        self.assertEqual(set(row), set(SWEEP_COLUMNS))

    def test_sweep_row_reports_resolution(self):
        data, _ = load_fixture(FIXTURE)
        row = sweep_row(SweepTask(0.6, data, 0.9, 0.9, 0.0, None))
        self.assertTrue(row["status"].startswith("resolution:"))

    def test_flip_points(self):
        rows = [
            {"c": 0.0, "covering_critical": True, "covering_dilated_minus": True,
             "separation_dilated_minus": False, "separation_dilated_plus": ""},
            {"c": 0.5, "covering_critical": True, "covering_dilated_minus": False,
             "separation_dilated_minus": False, "separation_dilated_plus": ""},
            {"c": 1.0, "covering_critical": True, "covering_dilated_minus": False,
             "separation_dilated_minus": True, "separation_dilated_plus": ""},
        ]
        self.assertEqual(flip_points(rows), {
            "covering_critical": None,
            "covering_dilated_minus": 0.5,
            "separation_dilated_minus": 1.0,
            "separation_dilated_plus": None,
        })


class TestRunConfig(unittest.TestCase):
    """Namespace mapping and range validation."""

    def test_from_namespace(self):
        ns = build_parser().parse_args(["verify-lemmas", "--codes", "L001, L005", "--format", "json"])
        cfg = RunConfig.from_namespace(ns)
        self.assertEqual(cfg.codes, ["L001", "L005"])
        self.assertTrue(cfg.writes_json)
        self.assertFalse(cfg.writes_csv)
        self.assertEqual(cfg.out, Path("_reports"))

    def test_validate_ranges(self):
        cfg = RunConfig(command="check", grid=1.5, r_max=0.0, jobs=0, epsilon=0.0)
        errors = cfg.validate_ranges()
        self.assertEqual(len(errors), 4)
        self.assertEqual(RunConfig(command="check").validate_ranges(), [])


if __name__ == "__main__":
    unittest.main(verbosity=2)
