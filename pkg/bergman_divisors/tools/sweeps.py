"""
sweeps — threshold cartography over the dilation constant C

For every C on the grid the fixture family is regenerated so that its
dilated_plus(C) disks cover the annulus, then covering and separation are
re-checked under the critical and dilated rules and, for p=2, the frame
bounds of the truncated model are recorded. Rows are independent, so they
are farmed out to a process pool and merged by a canonical sort on C.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from multiprocessing import Pool
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from tqdm import tqdm

from ..core.divisor import (
    CRITICAL,
    GridSpec,
    PSpace,
    RadiusRule,
    RuleKind,
    check_covering,
    check_separation,
)
from ..core.errors import BergmanError, DegreeError, DomainError, ResolutionError
from ..core.io import divisor_from_fixture
from ..core.model import build_gram, frame_bounds

logger = logging.getLogger(__name__)

SWEEP_SCHEMA = "threshold_sweep"
SWEEP_COLUMNS = (
    "c",
    "points",
    "covering_critical",
    "covering_dilated_minus",
    "separation_dilated_minus",
    "separation_dilated_plus",
    "frame_lower",
    "frame_upper",
    "frame_degree",
    "status",
)


def parse_range(text: str) -> List[float]:
    """'a:b:step' → [a, a+step, ..., ≤ b] (inclusive up to rounding)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise DomainError(f"sweep range must be 'a:b:step', got {text!r}")
    try:
        a, b, step = (float(p) for p in parts)
    except ValueError as exc:
        raise DomainError(f"sweep range must be numeric, got {text!r}") from exc
    if not (math.isfinite(a) and math.isfinite(b) and math.isfinite(step)) or step <= 0 or b < a:
        raise DomainError(f"sweep range needs finite a <= b and step > 0, got {text!r}")
    n = int(math.floor((b - a) / step + 1e-9)) + 1
    return [round(a + k * step, 12) for k in range(n)]


@dataclass(frozen=True)
class SweepTask:
    c: float
    fixture: Mapping[str, Any]
    grid_step: Optional[float]
    r_max: float
    compact_radius: float
    degree: Optional[int]


def sweep_row(task: SweepTask) -> Dict[str, Any]:
    """One row of the threshold table; library errors become a status string."""
    row: Dict[str, Any] = {col: "" for col in SWEEP_COLUMNS}
    row["c"] = task.c
    data = dict(task.fixture)
    data["rule"] = {"kind": RuleKind.DILATED_PLUS.value, "constant": task.c}
    try:
        d = divisor_from_fixture(data, r_end=task.r_max)
        grid = GridSpec(step=task.grid_step, r_max=task.r_max)
        minus = RadiusRule(RuleKind.DILATED_MINUS, task.c)
        plus = RadiusRule(RuleKind.DILATED_PLUS, task.c)
        row.update(
            points=len(d),
            covering_critical=check_covering(d, CRITICAL, task.compact_radius, grid).holds,
            covering_dilated_minus=check_covering(d, minus, task.compact_radius, grid).holds,
            separation_dilated_minus=check_separation(d, minus).holds,
            separation_dilated_plus=check_separation(d, plus).holds,
        )
        row["status"] = "ok"
        if d.p is PSpace.TWO and task.degree is not None:
            try:
                fb = frame_bounds(build_gram(d, task.degree))
                row.update(frame_lower=repr(fb.lower), frame_upper=repr(fb.upper), frame_degree=task.degree)
            except DegreeError as exc:
                row["status"] = f"frame skipped: degree >= {exc.suggested_degree} needed"
    except ResolutionError as exc:
        row["status"] = f"resolution: {exc}"
    except BergmanError as exc:
        row["status"] = f"error: {exc}"
    return row


def run_sweep(tasks: Sequence[SweepTask], jobs: int = 1, progress: bool = False) -> List[Dict[str, Any]]:
    """Rows for every task, sorted by C; jobs <= 1 runs in-process."""
    rows: List[Dict[str, Any]] = []
    with tqdm(total=len(tasks), desc="   Threshold sweep", unit=" C", ncols=100, disable=not progress) as bar:
        if jobs > 1 and len(tasks) > 1:
            with Pool(processes=min(jobs, len(tasks))) as pool:
                for row in pool.imap_unordered(sweep_row, tasks):
                    rows.append(row)
                    bar.update(1)
        else:
            for task in tasks:
                rows.append(sweep_row(task))
                bar.update(1)
    rows.sort(key=lambda r: r["c"])
    logger.debug("threshold sweep: %d rows", len(rows))
    return rows


def flip_points(rows: Sequence[Mapping[str, Any]]) -> Dict[str, Optional[float]]:
    """Smallest C at which each boolean column changes value along the sorted rows."""
    flips: Dict[str, Optional[float]] = {}
    for col in SWEEP_COLUMNS:
        if not col.startswith(("covering", "separation")):
            continue
        values: List[Tuple[float, bool]] = [(r["c"], r[col]) for r in rows if isinstance(r[col], bool)]
        flips[col] = next((c for (_, prev), (c, cur) in zip(values, values[1:]) if cur != prev), None)
    return flips


def task_config(task: SweepTask) -> Dict[str, Any]:
    out = asdict(task)
    out.pop("fixture")
    out.pop("c")
    return out
