#!/usr/bin/env python3
"""
cli.py — bergman-divisors command line

Usage:
    python -m bergman_divisors.tools.cli check --input divisor.json --out reports/
    python -m bergman_divisors.tools.cli check --fixture bergman_divisors/fixtures/lattice_fixture.json
    python -m bergman_divisors.tools.cli frame --input divisor.json --degree 80
    python -m bergman_divisors.tools.cli interpolate --input divisor.json --targets targets.json
    python -m bergman_divisors.tools.cli verify-lemmas [--quick] [--codes L001,L005]
    python -m bergman_divisors.tools.cli threshold-sweep --sweep-c 0:1.8:0.2 --jobs 4
    python -m bergman_divisors.tools.cli lattice --fixture fixture.json --out reports/

Exit codes:
    0 = all requested checks pass
    1 = a condition fails
    2 = input error (bad file, schema violation, parameter outside its range)
    3 = resolution / degree guard tripped
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

try:
    from bergman_divisors import SCHEMA_VERSION
except ImportError:
    # Fallback for direct script execution
    _repo_root = Path(__file__).resolve().parents[2]
    if str(_repo_root) not in sys.path:
        sys.path.insert(0, str(_repo_root))
    from bergman_divisors import SCHEMA_VERSION

from bergman_divisors.core.divisor import (
    DEFAULT_R_MAX,
    Divisor,
    GridSpec,
    PSpace,
    build_condition_report,
)
from bergman_divisors.core.errors import BergmanError, DegreeError, DomainError, ResolutionError
from bergman_divisors.core.io import (
    _save_csv,
    _save_json,
    divisor_from_fixture,
    load_divisor,
    load_fixture,
    load_targets,
)
from bergman_divisors.core.model import (
    GRAM_TAIL_BOUND,
    build_gram,
    frame_bounds,
    interpolate,
    suggest_out_degree,
)
from bergman_divisors.suite import LemmaSuite, SweepConfig
from bergman_divisors.tools.sweeps import (
    SWEEP_COLUMNS,
    SWEEP_SCHEMA,
    SweepTask,
    flip_points,
    parse_range,
    run_sweep,
    task_config,
)

logger = logging.getLogger(__name__)

PACKAGE_DIR = Path(__file__).resolve().parents[1]
DEFAULT_FIXTURE = PACKAGE_DIR / "fixtures" / "lattice_fixture.json"
DEFAULT_OUT = "_reports"

DEFAULT_CONSTANT = 0.5
DEFAULT_EPSILON = 0.5
DEFAULT_DEGREE_STEP = 10
DEFAULT_FRAME_TOL = 1e-6
DEFAULT_RESIDUAL_TOL = 1e-8
AUTO_DEGREE_FLOOR = 10

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_RESOLUTION = 3

CONDITION_COLUMNS = ("check", "verdict", "constant", "value", "witness_re", "witness_im")
LEMMA_COLUMNS = ("code", "name", "verdict", "message")
FRAME_COLUMNS = ("degree", "lower", "upper", "max_tail", "samples")


@dataclass
class RunConfig:
    """Parsed command-line configuration; None means 'take the fixture or module default'."""

    command: str
    input: Optional[Path] = None
    fixture: Optional[Path] = None
    targets: Optional[Path] = None
    out: Path = Path(DEFAULT_OUT)
    fmt: str = "both"
    grid: Optional[float] = None
    r_max: Optional[float] = None
    compact_radius: Optional[float] = None
    degree: Optional[int] = None
    degree_step: int = DEFAULT_DEGREE_STEP
    tolerance: Optional[float] = None
    constant: Optional[float] = None
    epsilon: Optional[float] = None
    alpha: Optional[float] = None
    sweep_c: Optional[str] = None
    jobs: int = 1
    quick: bool = False
    codes: List[str] = field(default_factory=list)
    require: List[str] = field(default_factory=list)
    seed: Optional[int] = None
    verbose: bool = False

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "RunConfig":
        data = dict(vars(ns))
        data["fmt"] = data.pop("format", "both")
        for key in ("input", "fixture", "targets", "out"):
            if data.get(key) is not None:
                data[key] = Path(data[key])
        if isinstance(data.get("codes"), str):
            data["codes"] = [c.strip() for c in data["codes"].split(",") if c.strip()]
        data["require"] = list(data.get("require") or [])
        filtered = {k: v for k, v in data.items() if k in cls.__dataclass_fields__ and v is not None}
        return cls(**filtered)

    def validate_ranges(self) -> List[str]:
        """Validate numeric ranges. Returns list of errors."""
        errors: List[str] = []
        if self.grid is not None and not 0 < self.grid < 1:
            errors.append(f"grid must be in (0, 1), got {self.grid}")
        if self.r_max is not None and not 0 < self.r_max < 1:
            errors.append(f"r-max must be in (0, 1), got {self.r_max}")
        if self.compact_radius is not None and not 0 <= self.compact_radius < 1:
            errors.append(f"compact-radius must be in [0, 1), got {self.compact_radius}")
        if self.degree is not None and self.degree < 0:
            errors.append(f"degree must be >= 0, got {self.degree}")
        if self.degree_step < 1:
            errors.append(f"degree-step must be positive, got {self.degree_step}")
        if self.tolerance is not None and not self.tolerance > 0:
            errors.append(f"tolerance must be positive, got {self.tolerance}")
        if self.constant is not None and self.constant < 0:
            errors.append(f"constant must be >= 0, got {self.constant}")
        if self.epsilon is not None and not self.epsilon > 0:
            errors.append(f"epsilon must be positive, got {self.epsilon}")
        if self.jobs < 1:
            errors.append(f"jobs must be positive, got {self.jobs}")
        return errors

    @property
    def writes_json(self) -> bool:
        return self.fmt in ("json", "both")

    @property
    def writes_csv(self) -> bool:
        return self.fmt in ("csv", "both")


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _banner(title: str, lines: List[str]) -> None:
    print(f"\n{'='*60}")
    print(title)
    print(f"{'='*60}")
    for line in lines:
        print(line)
    print(f"{'='*60}\n")


def _status(ok: bool) -> str:
    return "✓ PASS" if ok else "✗ FAIL"


def _envelope(cfg: RunConfig, source: Dict[str, Any], body: Dict[str, Any]) -> Dict[str, Any]:
    return {"schema_version": SCHEMA_VERSION, "command": cfg.command, "input": source, **body}


def _load_source(cfg: RunConfig) -> Tuple[Divisor, Dict[str, Any], Dict[str, Any]]:
    """(divisor, input description, fixture check block or {})."""
    if cfg.input is not None:
        d, sha = load_divisor(cfg.input)
        return d, {"file": cfg.input.name, "sha256": sha}, {}
    path = cfg.fixture or DEFAULT_FIXTURE
    data, sha = load_fixture(path)
    d = divisor_from_fixture(data, r_end=cfg.r_max)
    return d, {"fixture": path.name, "sha256": sha}, dict(data.get("check") or {})


def _auto_degree(d: Divisor) -> int:
    return max(
        [AUTO_DEGREE_FLOOR] + [suggest_out_degree(pt.m - 1, pt.lam, d.alpha, GRAM_TAIL_BOUND) for pt in d.points]
    )


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_check(cfg: RunConfig) -> int:
    d, source, check = _load_source(cfg)
    constant = cfg.constant if cfg.constant is not None else float(check.get("constant", DEFAULT_CONSTANT))
    epsilon = cfg.epsilon if cfg.epsilon is not None else float(check.get("epsilon", DEFAULT_EPSILON))
    compact = cfg.compact_radius if cfg.compact_radius is not None else float(check.get("compact_radius", 0.0))
    r_max = cfg.r_max if cfg.r_max is not None else float(check.get("r_max", DEFAULT_R_MAX))
    grid = GridSpec(step=cfg.grid, r_max=r_max)

    report = build_condition_report(d, constant=constant, epsilon=epsilon, compact_radius=compact, grid=grid)
    verdicts = report.verdicts()
    unknown = sorted(set(cfg.require) - set(verdicts))
    if unknown:
        raise DomainError(f"unknown check ids for --require: {', '.join(unknown)} (known: {', '.join(verdicts)})")
    required = sorted(cfg.require) if cfg.require else list(verdicts)
    passed = all(verdicts[k] for k in required)

    body = {
        "config": {"constant": constant, "epsilon": epsilon, "compact_radius": compact, "r_max": r_max,
                   "grid_step": cfg.grid, "points": len(d), "alpha": d.alpha, "p": d.p.value},
        "report": report.to_dict(),
        "verdicts": verdicts,
        "required": required,
        "passed": passed,
    }
    cfg.out.mkdir(parents=True, exist_ok=True)
    if cfg.writes_json:
        _save_json(cfg.out / "condition_report.json", _envelope(cfg, source, body))
    if cfg.writes_csv:
        _save_csv(cfg.out / "condition_report.csv", "condition_report", SCHEMA_VERSION,
                  CONDITION_COLUMNS, report.csv_rows())

    _banner("Divisor Condition Check", [
        f"Points: {len(d)}  alpha={d.alpha:g}  p={d.p.value}",
        f"Constant C: {constant:g}  epsilon: {epsilon:g}",
        f"Annulus: {compact:g} <= |z| <= {r_max:g}",
        f"Overlap constant: {report.overlap_constant}",
    ])
    for key, ok in verdicts.items():
        marker = "" if key in required else " (not required)"
        print(f"{_status(ok)} {key}{marker}")
    for note in report.notes:
        print(f"[WARN] {note}", file=sys.stderr)
    print(f"\nSummary: {sum(verdicts[k] for k in required)}/{len(required)} required checks passed")
    return EXIT_OK if passed else EXIT_FAIL


def cmd_frame(cfg: RunConfig) -> int:
    d, source, _ = _load_source(cfg)
    degree = cfg.degree if cfg.degree is not None else _auto_degree(d)
    tolerance = cfg.tolerance if cfg.tolerance is not None else DEFAULT_FRAME_TOL

    rows: List[Dict[str, Any]] = []
    bounds = []
    for n in (degree, degree + cfg.degree_step):
        g = build_gram(d, n)
        fb = frame_bounds(g)
        bounds.append(fb)
        rows.append({"degree": n, "lower": repr(fb.lower), "upper": repr(fb.upper),
                     "max_tail": repr(g.max_tail), "samples": len(g.indices)})
    gap = max(abs(bounds[1].lower - bounds[0].lower), abs(bounds[1].upper - bounds[0].upper))
    scale = max(1.0, bounds[1].upper)
    stable = gap <= tolerance * scale

    body = {
        "degrees": [degree, degree + cfg.degree_step],
        "bounds": [fb.to_dict() for fb in bounds],
        "tails": [float(r["max_tail"]) for r in rows],
        "stability_gap": gap,
        "tolerance": tolerance,
        "stable": stable,
    }
    cfg.out.mkdir(parents=True, exist_ok=True)
    if cfg.writes_json:
        _save_json(cfg.out / "frame_report.json", _envelope(cfg, source, body))
    if cfg.writes_csv:
        _save_csv(cfg.out / "frame_report.csv", "frame_report", SCHEMA_VERSION, FRAME_COLUMNS, rows)

    _banner("Frame Bounds (truncated model)", [
        f"Points: {len(d)}  alpha={d.alpha:g}  samples: {rows[0]['samples']}",
        *(f"N={r['degree']}: lower={float(r['lower']):.10g} upper={float(r['upper']):.10g} "
          f"tail={float(r['max_tail']):.3e}" for r in rows),
        f"Stability gap: {gap:.3e} (tolerance {tolerance:g})",
    ])
    print(f"{_status(stable)} frame bounds stable from N={degree} to N={degree + cfg.degree_step}")
    return EXIT_OK if stable else EXIT_RESOLUTION


def cmd_interpolate(cfg: RunConfig) -> int:
    if cfg.targets is None:
        raise DomainError("interpolate needs --targets")
    d, source, _ = _load_source(cfg)
    targets, targets_sha = load_targets(cfg.targets)
    degree = cfg.degree if cfg.degree is not None else _auto_degree(d)
    tolerance = cfg.tolerance if cfg.tolerance is not None else DEFAULT_RESIDUAL_TOL

    res = interpolate(d, targets, degree)
    ok = res.residual <= tolerance
    source = {**source, "targets": cfg.targets.name, "targets_sha256": targets_sha}
    body = {"degree": degree, "tolerance": tolerance, "solved": ok, **res.to_dict()}
    cfg.out.mkdir(parents=True, exist_ok=True)
    _save_json(cfg.out / "interpolation.json", _envelope(cfg, source, body))

    _banner("Minimum-Norm Interpolation", [
        f"Points: {len(d)}  targets: {len(targets)}  degree N={degree}",
        f"Rank: {res.rank}  cutoff: {res.cutoff:g}",
        f"Residual: {res.residual:.3e}  norm: {res.norm:.10g}",
    ])
    print(f"{_status(ok)} residual <= {tolerance:g}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_lemmas(cfg: RunConfig) -> int:
    sweep = SweepConfig.quick() if cfg.quick else SweepConfig.default()
    overrides: Dict[str, Any] = {}
    if cfg.alpha is not None:
        overrides["weight_alpha"] = cfg.alpha
    if cfg.constant is not None:
        overrides["weight_constant"] = cfg.constant
    if cfg.epsilon is not None:
        overrides["epsilon"] = cfg.epsilon
    if cfg.seed is not None:
        overrides["seed"] = cfg.seed
    sweep = replace(sweep, **overrides)
    suite = LemmaSuite(sweep, codes=cfg.codes or None)

    _banner("Lemma Suite", [
        f"Sweep: {'quick' if cfg.quick else 'default'}  properties: {len(suite.codes)}",
        f"Weights: alpha={sweep.weight_alpha:g}  C={sweep.weight_constant:g}  epsilon={sweep.epsilon:g}",
    ])
    result = suite.run()
    for r in result.results:
        print(f"{_status(r.passed)} [{r.code}] {r.name} ({r.elapsed_s:.1f}s)")
        if cfg.verbose or not r.passed:
            print(f"      {r.message}")

    cfg.out.mkdir(parents=True, exist_ok=True)
    if cfg.writes_json:
        _save_json(cfg.out / "lemma_report.json", _envelope(cfg, {}, result.to_dict()))
    if cfg.writes_csv:
        _save_csv(cfg.out / "lemma_report.csv", "lemma_report", SCHEMA_VERSION, LEMMA_COLUMNS,
                  [{k: r.to_dict()[k] for k in LEMMA_COLUMNS} for r in result.results])

    failed = [r.code for r in result.results if not r.passed]
    print(f"\n{'='*60}")
    print(f"Summary: {len(result.results) - len(failed)}/{len(result.results)} passed [{result.score}/100]")
    if failed:
        print(f"Failed properties: {', '.join(failed)}")
    print(f"{'='*60}\n")
    return EXIT_OK if result.passed else EXIT_FAIL


def cmd_threshold_sweep(cfg: RunConfig) -> int:
    if cfg.sweep_c is None:
        raise DomainError("threshold-sweep needs --sweep-c a:b:step")
    path = cfg.fixture or DEFAULT_FIXTURE
    data, sha = load_fixture(path)
    family = Divisor(float(data["alpha"]), PSpace(str(data["p"])))
    cs = parse_range(cfg.sweep_c)
    if cs[0] < 0 or cs[-1] >= family.shift:
        raise DomainError(f"C must lie in [0, {family.shift:g}) for alpha={family.alpha:g}, p={family.p.value}; "
                          f"got {cs[0]:g}..{cs[-1]:g}")

    check = dict(data.get("check") or {})
    r_max = cfg.r_max if cfg.r_max is not None else float(check.get("r_max", data["annulus"][1]))
    compact = cfg.compact_radius if cfg.compact_radius is not None else float(check.get("compact_radius", 0.0))
    tasks = [SweepTask(c, data, cfg.grid, r_max, compact, cfg.degree) for c in cs]
    rows = run_sweep(tasks, jobs=cfg.jobs, progress=cfg.verbose)
    flips = flip_points(rows)

    cfg.out.mkdir(parents=True, exist_ok=True)
    if cfg.writes_csv:
        _save_csv(cfg.out / "threshold_sweep.csv", SWEEP_SCHEMA, SCHEMA_VERSION, SWEEP_COLUMNS, rows)
    if cfg.writes_json:
        body = {"config": {**task_config(tasks[0]), "sweep_c": cfg.sweep_c}, "flips": flips, "rows": rows}
        _save_json(cfg.out / "threshold_sweep.json", _envelope(cfg, {"fixture": path.name, "sha256": sha}, body))

    _banner("Threshold Sweep over C", [
        f"Fixture: {path.name}  alpha={family.alpha:g}  p={family.p.value}",
        f"Grid: {len(cs)} values of C  jobs: {cfg.jobs}",
    ])
    for col, c in flips.items():
        print(f"  {col}: " + ("no flip" if c is None else f"flips at C={c:g}"))
    bad = [r for r in rows if r["status"] != "ok" and not str(r["status"]).startswith("frame skipped")]
    for r in bad:
        print(f"[WARN] C={r['c']:g}: {r['status']}", file=sys.stderr)
    return EXIT_OK


def cmd_lattice(cfg: RunConfig) -> int:
    path = cfg.fixture or DEFAULT_FIXTURE
    data, sha = load_fixture(path)
    d = divisor_from_fixture(data, r_end=cfg.r_max)
    cfg.out.mkdir(parents=True, exist_ok=True)
    target = cfg.out / f"{path.stem}_divisor.json"
    _save_json(target, d.to_dict())
    print(f"✓ {len(d)} points written to {target.name} (fixture sha256 {sha[:12]})")
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "frame": cmd_frame,
    "interpolate": cmd_interpolate,
    "verify-lemmas": cmd_verify_lemmas,
    "threshold-sweep": cmd_threshold_sweep,
    "lattice": cmd_lattice,
}


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=str, default=DEFAULT_OUT, help="Output directory for reports")
    common.add_argument("--format", choices=("json", "csv", "both"), default="both", help="Report format")
    common.add_argument("--verbose", "-v", action="store_true", help="Verbose output (DEBUG logging)")

    source = argparse.ArgumentParser(add_help=False)
    group = source.add_mutually_exclusive_group()
    group.add_argument("--input", type=str, default=None, help="Divisor JSON file")
    group.add_argument("--fixture", type=str, default=None, help="Lattice fixture JSON (generator parameters)")
    source.add_argument("--r-max", dest="r_max", type=float, default=None, help="Outer radius of the test annulus")

    geometry = argparse.ArgumentParser(add_help=False)
    geometry.add_argument("--grid", type=float, default=None, help="Pseudohyperbolic grid step (default: radius/4)")
    geometry.add_argument("--compact-radius", dest="compact_radius", type=float, default=None,
                          help="Inner radius of the test annulus")

    parser = argparse.ArgumentParser(description="Sampling and interpolation divisors in weighted Bergman spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common, source, geometry], help="Covering / separation / overlap report")
    p.add_argument("--constant", type=float, default=None, help="C for the dilated rules")
    p.add_argument("--epsilon", type=float, default=None, help="epsilon for the uniqueness rule")
    p.add_argument("--require", action="append", default=[], metavar="CHECK_ID",
                   help="Check id deciding the exit code (repeatable; default: all)")

    p = sub.add_parser("frame", parents=[common, source], help="Frame bounds at N and N+step")
    p.add_argument("--degree", type=int, default=None, help="Truncation degree N (default: from tail estimate)")
    p.add_argument("--degree-step", dest="degree_step", type=int, default=DEFAULT_DEGREE_STEP)
    p.add_argument("--tolerance", type=float, default=None, help="Allowed change of the bounds")

    p = sub.add_parser("interpolate", parents=[common, source], help="Minimum-norm interpolation")
    p.add_argument("--targets", type=str, default=None, help="Targets JSON ('re,im,j' -> [re, im])")
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--tolerance", type=float, default=None, help="Residual tolerance")

    p = sub.add_parser("verify-lemmas", parents=[common], help="Run the lemma suite")
    p.add_argument("--quick", action="store_true", help="Narrowed sweep (m <= 20)")
    p.add_argument("--alpha", type=float, default=None, help="alpha for the weight properties")
    p.add_argument("--constant", type=float, default=None, help="C_X for the dbar weights")
    p.add_argument("--epsilon", type=float, default=None, help="epsilon for the uniqueness weights")
    p.add_argument("--codes", type=str, default=None, help="Comma-separated property codes")
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("threshold-sweep", parents=[common, geometry], help="Sweep C over a lattice family")
    p.add_argument("--fixture", type=str, default=None)
    p.add_argument("--r-max", dest="r_max", type=float, default=None)
    p.add_argument("--sweep-c", dest="sweep_c", type=str, default=None, metavar="A:B:STEP")
    p.add_argument("--degree", type=int, default=None, help="Record frame bounds at this degree (p=2)")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("lattice", parents=[common], help="Write the divisor a fixture generates")
    p.add_argument("--fixture", type=str, default=None)
    p.add_argument("--r-max", dest="r_max", type=float, default=None)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    cfg = RunConfig.from_namespace(args)
    errors = cfg.validate_ranges()
    if errors:
        for err in errors:
            print(f"[FATAL] {err}", file=sys.stderr)
        return EXIT_INPUT

    try:
        return COMMANDS[cfg.command](cfg)
    except DegreeError as exc:
        print(f"[FATAL] {exc}", file=sys.stderr)
        print(f"  Hint: rerun with --degree {exc.suggested_degree}", file=sys.stderr)
        return EXIT_RESOLUTION
    except ResolutionError as exc:
        print(f"[FATAL] {exc}", file=sys.stderr)
        return EXIT_RESOLUTION
    except BergmanError as exc:
        print(f"[FATAL] {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"[FATAL] {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
