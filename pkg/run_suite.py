#!/usr/bin/env python3
"""
run_suite.py — One-click local validation

Usage:
    python run_suite.py            # Quick lemma sweep, fixture check, unit tests
    python run_suite.py --full     # Default (acceptance) lemma sweep
    python run_suite.py --no-tests # Skip the unit tests

Reports go to _reports/.
"""

from __future__ import annotations

import argparse
import subprocess
import sys
from pathlib import Path
from typing import List, Optional, Tuple

ROOT = Path(__file__).resolve().parent
REPORTS = ROOT / "_reports"
CLI = [sys.executable, "-m", "bergman_divisors.tools.cli"]
FIXTURE = ROOT / "bergman_divisors" / "fixtures" / "lattice_fixture.json"


def _steps(full: bool, tests: bool, verbose: bool) -> List[Tuple[str, List[str]]]:
    lemmas = CLI + ["verify-lemmas", "--out", str(REPORTS / "lemmas")] + ([] if full else ["--quick"])
    steps = [
        ("lemma suite" + ("" if full else " (quick)"), lemmas),
        ("lattice fixture check", CLI + ["check", "--fixture", str(FIXTURE), "--require", "covering:critical",
                                         "--out", str(REPORTS / "fixture")]),
    ]
    if tests:
        steps.append(("unit tests", [sys.executable, "-m", "unittest", "discover", "-s", "bergman_divisors/tests",
                                     "-t", ".", "-p", "test_*.py", "-v" if verbose else "-q"]))
    return steps


def _run_step(name: str, cmd: List[str], verbose: bool) -> bool:
    print(f"\n▶ {name}")
    proc = subprocess.run(cmd, capture_output=not verbose, text=True, cwd=ROOT)
    ok = proc.returncode == 0
    if not ok and not verbose:
        print(proc.stdout)
        print(proc.stderr, file=sys.stderr)
    print(f"{'✓ PASS' if ok else '✗ FAIL'} {name} (exit {proc.returncode})")
    return ok


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(description="One-click bergman-divisors validation")
    parser.add_argument("--full", action="store_true", help="Default (acceptance) lemma sweep instead of the quick one")
    parser.add_argument("--no-tests", action="store_true", help="Skip unit tests")
    parser.add_argument("--verbose", "-v", action="store_true", help="Stream command output")
    args = parser.parse_args(argv)

    results = [_run_step(name, cmd, args.verbose) for name, cmd in _steps(args.full, not args.no_tests, args.verbose)]

    print("\n" + "=" * 60)
    print(f"Summary: {sum(results)}/{len(results)} steps passed; reports in {REPORTS}")
    print("=" * 60)
    return 0 if all(results) else 1


if __name__ == "__main__":
    raise SystemExit(main())
