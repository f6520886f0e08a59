"""
divisor — divisor data model, radius rules and geometric condition checkers

A divisor is a finite set of pairs (λ, m_λ). Every rule attaches to each
point a pseudohyperbolic disk D(λ, r) with

    critical        r = √(m / (m + D))
    dilated_plus    r = √((m + C) / (m + D)),   C < D
    dilated_minus   r = √((m - C) / (m + D)),   only for m > C
    uniqueness_eps  r = √(m / (m + U + ε))

where D = α+1 (p = 2) or α (p = ∞) and U = α+2 (p = 2) or α (p = ∞).

Checkers:
    overlap_constant  max number of critical disks through one point
    check_covering    ⋃ D(λ, r) ⊇ {compact_radius ≤ |z| ≤ r_max} on a grid
    check_separation  exact pairwise disjointness
    blaschke_sum      Σ (m_λ (1 - |λ|²))²
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ConstraintError, DomainError, ResolutionError
from .hypgeo import BOUNDARY_GUARD, DiskPoint, euclid_arrays, rho_array

logger = logging.getLogger(__name__)

DEFAULT_R_MAX = 1 - 1e-4
DEFAULT_AUTO_STEP = 0.05
GRID_MAX_POINTS = 4_000_000
LATTICE_MAX_POINTS = 200_000
MEMBERSHIP_CHUNK = 4096
RESOLUTION_FACTOR = 4.0
INTERSECTION_NUDGE = 1e-7


class PSpace(str, Enum):
    TWO = "2"
    INFINITY = "inf"


class RuleKind(str, Enum):
    CRITICAL = "critical"
    DILATED_PLUS = "dilated_plus"
    DILATED_MINUS = "dilated_minus"
    UNIQUENESS_EPS = "uniqueness_eps"


@dataclass(frozen=True)
class DivisorPoint:
    lam: DiskPoint
    m: int

    def __post_init__(self) -> None:
        if not isinstance(self.lam, DiskPoint):
            object.__setattr__(self, "lam", DiskPoint(complex(self.lam)))
        if isinstance(self.m, bool) or int(self.m) != self.m or self.m < 1:
            raise DomainError(f"multiplicity must be a positive integer, got {self.m}")
        object.__setattr__(self, "m", int(self.m))


@dataclass(frozen=True)
class Divisor:
    alpha: float
    p: PSpace
    points: Tuple[DivisorPoint, ...] = ()

    def __post_init__(self) -> None:
        p = PSpace(self.p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "points", tuple(self.points))
        alpha = float(self.alpha)
        if not math.isfinite(alpha):
            raise DomainError(f"alpha must be finite, got {self.alpha}")
        if p is PSpace.TWO and alpha <= -1:
            raise DomainError(f"alpha must exceed -1 for p=2, got {alpha}")
        if p is PSpace.INFINITY and alpha <= 0:
            raise DomainError(f"alpha must be positive for p=inf, got {alpha}")
        object.__setattr__(self, "alpha", alpha)
        seen = set()
        for pt in self.points:
            if pt.lam.value in seen:
                raise DomainError(f"duplicate divisor point {pt.lam.value}")
            seen.add(pt.lam.value)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def shift(self) -> float:
        """D = α+1 for p=2, α for p=∞."""
        return self.alpha + 1 if self.p is PSpace.TWO else self.alpha

    @property
    def centers(self) -> np.ndarray:
        return np.array([pt.lam.value for pt in self.points], dtype=complex)

    @property
    def multiplicities(self) -> np.ndarray:
        return np.array([pt.m for pt in self.points], dtype=int)

    @property
    def max_multiplicity(self) -> int:
        return max((pt.m for pt in self.points), default=0)

    def rotated(self, theta: float) -> "Divisor":
        u = complex(math.cos(theta), math.sin(theta))
        return Divisor(
            self.alpha, self.p, tuple(DivisorPoint(DiskPoint(u * pt.lam.value), pt.m) for pt in self.points)
        )

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Divisor":
        points = tuple(
            DivisorPoint(DiskPoint(complex(float(item["re"]), float(item["im"]))), item["m"])
            for item in data.get("points", [])
        )
        return cls(alpha=float(data["alpha"]), p=PSpace(str(data["p"])), points=points)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "alpha": self.alpha,
            "p": self.p.value,
            "points": [{"re": pt.lam.value.real, "im": pt.lam.value.imag, "m": pt.m} for pt in self.points],
        }


@dataclass(frozen=True)
class RadiusRule:
    kind: RuleKind
    constant: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", RuleKind(self.kind))
        c = float(self.constant)
        if not math.isfinite(c) or c < 0:
            raise DomainError(f"rule constant must be a non-negative real, got {self.constant}")
        if self.kind is RuleKind.UNIQUENESS_EPS and c <= 0:
            raise DomainError("uniqueness_eps requires epsilon > 0")
        object.__setattr__(self, "constant", c)

    @property
    def check_id(self) -> str:
        return self.kind.value

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "constant": self.constant}


CRITICAL = RadiusRule(RuleKind.CRITICAL)


@dataclass(frozen=True)
class GridSpec:
    """Covering grid: pseudohyperbolic step (None = radius/4 auto), outer radius, point cap."""

    step: Optional[float] = None
    r_max: float = DEFAULT_R_MAX
    max_points: int = GRID_MAX_POINTS

    def __post_init__(self) -> None:
        if self.step is not None and not 0 < self.step < 1:
            raise DomainError(f"grid step must lie in (0, 1), got {self.step}")
        if not 0 < self.r_max < 1:
            raise DomainError(f"r_max must lie in (0, 1), got {self.r_max}")
        if self.max_points < 1:
            raise DomainError("max_points must be positive")


# ---------------------------------------------------------------------------
# Radii
# ---------------------------------------------------------------------------

def _rule_radius(alpha: float, p: PSpace, m: int, rule: RadiusRule) -> Optional[float]:
    d_shift = alpha + 1 if p is PSpace.TWO else alpha
    c = rule.constant
    if rule.kind is RuleKind.CRITICAL:
        return math.sqrt(m / (m + d_shift))
    if rule.kind is RuleKind.DILATED_PLUS:
        if c >= d_shift:
            raise ConstraintError(f"dilated_plus needs C < {d_shift:g} for p={p.value}, alpha={alpha:g}; got C={c:g}")
        return math.sqrt((m + c) / (m + d_shift))
    if rule.kind is RuleKind.DILATED_MINUS:
        if m <= c:
            return None
        return math.sqrt((m - c) / (m + d_shift))
    u_shift = alpha + 2 if p is PSpace.TWO else alpha
    return math.sqrt(m / (m + u_shift + c))


def radius_for(d: Divisor, m: int, rule: RadiusRule) -> Optional[float]:
    """Pseudohyperbolic radius of the disk a point of multiplicity m gets under rule; None = no disk."""
    if isinstance(m, bool) or int(m) != m or m < 1:
        raise DomainError(f"multiplicity must be a positive integer, got {m}")
    return _rule_radius(d.alpha, d.p, int(m), rule)


def _disks(d: Divisor, rule: RadiusRule) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(point indices, centers, radii) of the points that carry a disk under rule."""
    idx: List[int] = []
    radii: List[float] = []
    for i, pt in enumerate(d.points):
        r = _rule_radius(d.alpha, d.p, pt.m, rule)
        if r is not None:
            idx.append(i)
            radii.append(r)
    index = np.array(idx, dtype=int)
    centers = d.centers[index] if idx else np.zeros(0, dtype=complex)
    return index, centers, np.array(radii, dtype=float)


def covered_mask(d: Divisor, rule: RadiusRule, z: Any) -> np.ndarray:
    """Boolean mask of the points z lying in some rule disk, tested on the Euclidean forms."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    _, centers, radii = _disks(d, rule)
    mask = np.zeros(z.shape, dtype=bool)
    if centers.size == 0:
        return mask
    ec, er = euclid_arrays(centers, radii)
    flat = z.ravel()
    out = mask.ravel()
    for start in range(0, flat.size, MEMBERSHIP_CHUNK):
        block = flat[start:start + MEMBERSHIP_CHUNK]
        out[start:start + block.size] = (np.abs(block[:, None] - ec[None, :]) < er[None, :]).any(axis=1)
    return out.reshape(z.shape)


def _depth(points: np.ndarray, centers: np.ndarray, radii: np.ndarray) -> np.ndarray:
    depth = np.zeros(points.size, dtype=int)
    for start in range(0, points.size, MEMBERSHIP_CHUNK):
        block = points[start:start + MEMBERSHIP_CHUNK]
        depth[start:start + block.size] = (rho_array(centers[None, :], block[:, None]) < radii[None, :]).sum(axis=1)
    return depth


# ---------------------------------------------------------------------------
# Covering grid
# ---------------------------------------------------------------------------

def _ring_radii(compact_radius: float, r_max: float, step: float) -> np.ndarray:
    u0 = math.atanh(compact_radius)
    u1 = math.atanh(r_max)
    du = math.atanh(step)
    count = max(1, int(math.ceil((u1 - u0) / du))) + 1
    return np.tanh(np.linspace(u0, u1, count))


def _ring_count(t: float, step: float) -> int:
    if t <= 0:
        return 1
    return max(1, int(math.ceil(2 * math.pi * t / ((1 - t * t) * step))))


def grid_size(compact_radius: float, grid: GridSpec, step: float) -> int:
    return int(sum(_ring_count(float(t), step) for t in _ring_radii(compact_radius, grid.r_max, step)))


def iter_grid_rings(compact_radius: float, grid: GridSpec, step: float) -> Iterator[np.ndarray]:
    """Rings of grid points, inner to outer, each in ascending angle; neighbours within ρ ≤ step."""
    for t in _ring_radii(compact_radius, grid.r_max, step):
        n = _ring_count(float(t), step)
        yield t * np.exp(2j * np.pi * np.arange(n) / n)


def _resolve_step(radii: np.ndarray, grid: GridSpec) -> float:
    if radii.size == 0:
        return grid.step if grid.step is not None else DEFAULT_AUTO_STEP
    limit = float(radii.min()) / RESOLUTION_FACTOR
    if grid.step is None:
        return limit
    if grid.step > limit * (1 + 1e-12):
        raise ResolutionError(
            f"grid step {grid.step:g} exceeds smallest disk radius / {RESOLUTION_FACTOR:g} = {limit:.6g}"
        )
    return grid.step


# ---------------------------------------------------------------------------
# Results
# ---------------------------------------------------------------------------

@dataclass
class CoveringResult:
    rule: RadiusRule
    holds: bool
    witness: Optional[complex]
    compact_radius: float
    r_max: float
    step: float
    points_tested: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rule": self.rule.to_dict(),
            "holds": self.holds,
            "witness": None if self.witness is None else {"re": self.witness.real, "im": self.witness.imag},
            "compact_radius": self.compact_radius,
            "r_max": self.r_max,
            "step": self.step,
            "points_tested": self.points_tested,
        }


@dataclass
class ViolatingPair:
    i: int
    j: int
    distance: float
    threshold: float

    def to_dict(self) -> Dict[str, Any]:
        return {"i": self.i, "j": self.j, "rho": self.distance, "threshold": self.threshold}


@dataclass
class SeparationResult:
    rule: RadiusRule
    holds: bool
    violating_pairs: List[ViolatingPair] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rule": self.rule.to_dict(),
            "holds": self.holds,
            "violating_pairs": [v.to_dict() for v in self.violating_pairs],
        }


# ---------------------------------------------------------------------------
# Checkers
# ---------------------------------------------------------------------------

def _intersection_candidates(centers: np.ndarray, radii: np.ndarray) -> np.ndarray:
    """Chord midpoints and circle-intersection points (nudged into the lens) of intersecting Euclidean pairs."""
    n = centers.size
    if n < 2:
        return np.zeros(0, dtype=complex)
    ii, jj = np.triu_indices(n, k=1)
    diff = centers[jj] - centers[ii]
    dist = np.abs(diff)
    ri, rj = radii[ii], radii[jj]
    hit = (dist < ri + rj) & (dist > np.abs(ri - rj)) & (dist > 0)
    if not hit.any():
        return np.zeros(0, dtype=complex)
    c0, u, dd, r0, r1 = centers[ii][hit], diff[hit] / dist[hit], dist[hit], ri[hit], rj[hit]
    along = (dd * dd + r0 * r0 - r1 * r1) / (2 * dd)
    half = np.sqrt(np.maximum(r0 * r0 - along * along, 0.0))
    mid = c0 + along * u
    p1 = mid + 1j * u * half
    p2 = mid - 1j * u * half
    nudge = INTERSECTION_NUDGE
    pts = np.concatenate([mid, p1 + nudge * (mid - p1), p2 + nudge * (mid - p2)])
    return pts[np.abs(pts) < 1 - BOUNDARY_GUARD]


def overlap_constant(d: Divisor, grid: Optional[GridSpec] = None) -> int:
    """Largest number of critical disks containing a single tested point."""
    grid = grid or GridSpec()
    if len(d) == 0:
        return 0
    _, centers, radii = _disks(d, CRITICAL)
    ec, er = euclid_arrays(centers, radii)
    candidates = np.concatenate([centers, ec, _intersection_candidates(ec, er)])
    best = int(_depth(candidates, centers, radii).max())
    step = _resolve_step(radii, grid)
    if grid_size(0.0, grid, step) > grid.max_points:
        logger.debug("overlap grid capped; using witness candidates only")
        return best
    lo, hi = np.abs(ec) - er, np.abs(ec) + er
    for ring in iter_grid_rings(0.0, grid, step):
        t = float(np.abs(ring[0]))
        near = (lo < t) & (hi > t)
        if near.any():
            best = max(best, int(_depth(ring, centers[near], radii[near]).max()))
    return best


def check_covering(
    d: Divisor,
    rule: RadiusRule,
    compact_radius: float = 0.0,
    grid: Optional[GridSpec] = None,
) -> CoveringResult:
    """Test ⋃ D(λ, r_λ) ⊇ {compact_radius ≤ |z| ≤ r_max} on the ring grid; first uncovered point is the witness."""
    grid = grid or GridSpec()
    if not 0 <= compact_radius < grid.r_max:
        raise DomainError(f"compact_radius must lie in [0, r_max), got {compact_radius}")
    _, centers, radii = _disks(d, rule)
    step = _resolve_step(radii, grid)
    total = grid_size(compact_radius, grid, step)
    if total > grid.max_points:
        raise ResolutionError(f"covering grid needs {total} points, cap is {grid.max_points}; raise the step or lower r_max")
    logger.debug("covering %s: %d grid points, step %.4g", rule.check_id, total, step)

    ec, er = euclid_arrays(centers, radii)
    lo, hi = np.abs(ec) - er, np.abs(ec) + er
    tested = 0
    for ring in iter_grid_rings(compact_radius, grid, step):
        t = float(np.abs(ring[0]))
        near = (lo < t) & (hi > t)
        tested += ring.size
        if not near.any():
            return CoveringResult(rule, False, complex(ring[0]), compact_radius, grid.r_max, step, tested)
        c, r = ec[near], er[near]
        for start in range(0, ring.size, MEMBERSHIP_CHUNK):
            block = ring[start:start + MEMBERSHIP_CHUNK]
            inside = (np.abs(block[:, None] - c[None, :]) < r[None, :]).any(axis=1)
            if not inside.all():
                witness = complex(block[int(np.argmin(inside))])
                return CoveringResult(rule, False, witness, compact_radius, grid.r_max, step, tested)
    return CoveringResult(rule, True, None, compact_radius, grid.r_max, step, tested)


def check_separation(d: Divisor, rule: RadiusRule) -> SeparationResult:
    """Pairs (i, j) with ρ(λ_i, λ_j) < (r_i + r_j)/(1 + r_i r_j), i.e. intersecting disks."""
    index, centers, radii = _disks(d, rule)
    if index.size < 2:
        return SeparationResult(rule, True)
    ii, jj = np.triu_indices(index.size, k=1)
    dist = rho_array(centers[ii], centers[jj])
    threshold = (radii[ii] + radii[jj]) / (1 + radii[ii] * radii[jj])
    bad = np.nonzero(dist < threshold)[0]
    pairs = [ViolatingPair(int(index[ii[k]]), int(index[jj[k]]), float(dist[k]), float(threshold[k])) for k in bad]
    pairs.sort(key=lambda v: (v.i, v.j))
    return SeparationResult(rule, not pairs, pairs)


def blaschke_sum(d: Divisor) -> float:
    return math.fsum((pt.m * (1 - abs(pt.lam.value) ** 2)) ** 2 for pt in d.points)


def euclidean_area_sum(d: Divisor, rule: RadiusRule) -> float:
    """Σ R_λ² over the Euclidean forms of the rule disks."""
    _, centers, radii = _disks(d, rule)
    if centers.size == 0:
        return 0.0
    _, er = euclid_arrays(centers, radii)
    return math.fsum(er * er)


# ---------------------------------------------------------------------------
# Gap estimates
# ---------------------------------------------------------------------------

def _shift(alpha: float, p: PSpace) -> float:
    return alpha + 1 if PSpace(p) is PSpace.TWO else alpha


def gap_lower_bound(m: int, alpha: float, c: float, p: PSpace = PSpace.TWO) -> float:
    """C(m + D)/((2D - C)m + D²): lower bound for dist(z, D(λ, r)) when ρ(z, λ) ≥ r_{+C}."""
    dd = _shift(alpha, p)
    if not 0 < c < dd:
        raise ConstraintError(f"gap estimate needs 0 < C < {dd:g}, got {c:g}")
    return c * (m + dd) / ((2 * dd - c) * m + dd * dd)


def gap_actual(m: int, alpha: float, c: float, p: PSpace = PSpace.TWO) -> float:
    """Exact pseudohyperbolic gap (r_C - r)/(1 - r_C r) between the critical and the +C circles."""
    dd = _shift(alpha, p)
    if not 0 < c < dd:
        raise ConstraintError(f"gap needs 0 < C < {dd:g}, got {c:g}")
    r = math.sqrt(m / (m + dd))
    rc = math.sqrt((m + c) / (m + dd))
    return (rc - r) / (1 - rc * r)


def inf_gap_lower_bound(alpha: float, c: float) -> float:
    """m → ∞ limit C/(2α - C) of the growth-space gap estimate."""
    if not 0 < c < alpha:
        raise ConstraintError(f"needs 0 < C < alpha, got C={c:g}, alpha={alpha:g}")
    return c / (2 * alpha - c)


@dataclass
class InterpolationMargin:
    delta: float
    epsilon: float
    local_mass: float

    def to_dict(self) -> Dict[str, float]:
        return {"delta": self.delta, "epsilon": self.epsilon, "local_mass": self.local_mass}


def interpolation_margin(alpha: float, c: float) -> InterpolationMargin:
    """δ = 1/(2α + 2C + 1), ε = δ/2 and the mass 1 - (1 - ε²)^{α+1} of T_w 1 on D(w, ε)."""
    if alpha <= -1 or c <= 0:
        raise DomainError(f"needs alpha > -1 and C > 0, got alpha={alpha:g}, C={c:g}")
    delta = 1.0 / (2 * alpha + 2 * c + 1)
    eps = delta / 2
    return InterpolationMargin(delta, eps, -math.expm1((alpha + 1) * math.log1p(-eps * eps)))


def boundary_gap(m: int, alpha: float, c: float) -> float:
    """Exact ρ-distance between ∂D(λ, √((m-C)/(m+α+1))) and ∂D(λ, √((m-C+1)/(m+α+1)))."""
    if m <= c:
        raise DomainError(f"needs m > C, got m={m}, C={c:g}")
    big = m + alpha + 1
    r = math.sqrt((m - c) / big)
    r1 = math.sqrt(min(m - c + 1, big) / big)
    return (r1 - r) / (1 - r * r1)


# ---------------------------------------------------------------------------
# Radius shift comparison
# ---------------------------------------------------------------------------

@dataclass
class RadiusShift:
    m: int
    c1: float
    c2: float
    c_star: float
    holds: bool
    skipped: bool

    def to_dict(self) -> Dict[str, Any]:
        return {"m": self.m, "c1": self.c1, "c2": self.c2, "c_star": self.c_star, "holds": self.holds, "skipped": self.skipped}


def compare_radius_shift(
    m: int, alpha: float, epsilon: float, c1: Optional[float] = None, c2: Optional[float] = None
) -> RadiusShift:
    """Check (m-C2)/(m+α) ≤ m/(m+α+ε) ≤ (m-C1)/(m+α).

    The middle term equals (m - C*)/(m+α) with C* = mε/(m+α+ε), increasing in m.
    Defaults: C2 = 2ε, C1 = C2 ε/(C2+α+ε), the value of C* at m = C2.
    """
    if epsilon <= 0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    if c2 is None:
        c2 = 2 * epsilon
    if c1 is None:
        c1 = c2 * epsilon / (c2 + alpha + epsilon)
    c_star = m * epsilon / (m + alpha + epsilon)
    if m <= c2:
        return RadiusShift(m, c1, c2, c_star, False, True)
    mid = m / (m + alpha + epsilon)
    holds = (m - c2) / (m + alpha) <= mid <= (m - c1) / (m + alpha)
    return RadiusShift(m, c1, c2, c_star, bool(holds), False)


# ---------------------------------------------------------------------------
# Multiplicity schedules and lattices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Schedule:
    """m(r): `constant:K` → K, `inverse_gap:K` → max(1, ⌈K/(1-r²)⌉)."""

    kind: str
    k: float

    def __call__(self, r: float) -> int:
        if self.kind == "constant":
            return int(self.k)
        return max(1, int(math.ceil(self.k / (1 - r * r) - 1e-12)))

    @property
    def text(self) -> str:
        return f"{self.kind}:{self.k:g}"


def parse_schedule(text: str) -> Schedule:
    kind, sep, value = text.partition(":")
    if not sep or kind not in ("constant", "inverse_gap"):
        raise DomainError(f"schedule must be constant:K or inverse_gap:K, got {text!r}")
    try:
        k = float(value)
    except ValueError as exc:
        raise DomainError(f"schedule constant is not a number: {value!r}") from exc
    if not math.isfinite(k) or k <= 0 or (kind == "constant" and k != int(k)):
        raise DomainError(f"schedule constant must be positive (integer for constant), got {value!r}")
    return Schedule(kind, k)


def generate_lattice(
    alpha: float,
    p: PSpace,
    density: float,
    m_schedule: Callable[[float], int],
    annulus: Sequence[float],
    rule: Optional[RadiusRule] = None,
) -> Divisor:
    """Deterministic ring net whose rule disks (critical by default) cover the annulus.

    Work in u = artanh|z|. Each point's disk has hyperbolic radius R = artanh(r).
    Rings are spaced by min(R_i, R_{i+1})/density and each ring carries enough
    points that the arc between neighbours is at most R_i/density, so every
    point of the annulus is within R/density of a center. density > 1 covers,
    density = 1 abuts in the worst case.
    """
    rule = rule or CRITICAL
    if density <= 0 or not math.isfinite(density):
        raise DomainError(f"density must be positive, got {density}")
    r0, r1 = float(annulus[0]), float(annulus[1])
    if not 0 <= r0 < r1 < 1:
        raise DomainError(f"annulus must satisfy 0 <= r0 < r1 < 1, got [{r0}, {r1}]")
    probe = Divisor(alpha, p)

    def hyp_radius(t: float) -> Tuple[int, float]:
        m = int(m_schedule(t))
        if m < 1:
            raise DomainError(f"schedule produced m={m} at r={t:g}")
        r = radius_for(probe, m, rule)
        if r is None:
            raise ConstraintError(f"rule {rule.check_id} gives no disk for m={m}")
        return m, math.atanh(r)

    points: List[DivisorPoint] = []
    u, u_end = math.atanh(r0), math.atanh(r1)
    ring = 0
    while True:
        t = math.tanh(u)
        m, big_r = hyp_radius(t)
        if t == 0:
            phases = [0.0]
        else:
            arc = big_r / density
            n = max(1, int(math.ceil(2 * math.pi * t / ((1 - t * t) * arc))))
            offset = 0.5 if ring % 2 else 0.0
            phases = [2 * math.pi * (k + offset) / n for k in range(n)]
        for theta in phases:
            points.append(DivisorPoint(DiskPoint(t * complex(math.cos(theta), math.sin(theta))), m))
        if len(points) > LATTICE_MAX_POINTS:
            raise ResolutionError(f"lattice exceeds {LATTICE_MAX_POINTS} points; lower the density or r1")
        if u >= u_end:
            break
        du = big_r / density
        for _ in range(64):
            next_r = hyp_radius(math.tanh(u + du))[1]
            if next_r * (1 + 1e-12) >= du * density:
                break
            du = next_r / density
        u += du
        ring += 1
    logger.debug("lattice: %d points on %d rings", len(points), ring + 1)
    return Divisor(alpha, p, tuple(points))


# ---------------------------------------------------------------------------
# Aggregated report
# ---------------------------------------------------------------------------

@dataclass
class ConditionReport:
    overlap_constant: int
    covering: Dict[str, CoveringResult]
    separation: Dict[str, SeparationResult]
    blaschke_sum: float
    area_sum: float
    notes: List[str] = field(default_factory=list)

    def verdicts(self) -> Dict[str, bool]:
        """Check id → verdict; ids are `covering:<rule>` and `separation:<rule>`."""
        out = {f"covering:{k}": v.holds for k, v in self.covering.items()}
        out.update({f"separation:{k}": v.holds for k, v in self.separation.items()})
        return dict(sorted(out.items()))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "overlap_constant": self.overlap_constant,
            "covering": {k: v.to_dict() for k, v in sorted(self.covering.items())},
            "separation": {k: v.to_dict() for k, v in sorted(self.separation.items())},
            "blaschke_sum": self.blaschke_sum,
            "euclidean_area_sum": self.area_sum,
            "notes": list(self.notes),
        }

    def csv_rows(self) -> List[Dict[str, Any]]:
        rows: List[Dict[str, Any]] = [
            {"check": "overlap", "verdict": "INFO", "constant": "", "value": self.overlap_constant,
             "witness_re": "", "witness_im": ""},
            {"check": "blaschke", "verdict": "INFO", "constant": "", "value": repr(self.blaschke_sum),
             "witness_re": "", "witness_im": ""},
        ]
        for key, cov in self.covering.items():
            w = cov.witness
            rows.append({"check": f"covering:{key}", "verdict": "PASS" if cov.holds else "FAIL",
                         "constant": repr(cov.rule.constant), "value": cov.points_tested,
                         "witness_re": "" if w is None else repr(w.real), "witness_im": "" if w is None else repr(w.imag)})
        for key, sep in self.separation.items():
            rows.append({"check": f"separation:{key}", "verdict": "PASS" if sep.holds else "FAIL",
                         "constant": repr(sep.rule.constant), "value": len(sep.violating_pairs),
                         "witness_re": "", "witness_im": ""})
        rows.sort(key=lambda row: row["check"])
        return rows


def standard_rules(d: Divisor, constant: float, epsilon: float) -> Tuple[List[RadiusRule], List[str]]:
    """Rules a full report evaluates; dilated_plus is dropped (with a note) when C is out of range."""
    notes: List[str] = []
    rules = [CRITICAL, RadiusRule(RuleKind.DILATED_MINUS, constant), RadiusRule(RuleKind.UNIQUENESS_EPS, epsilon)]
    if constant < d.shift:
        rules.insert(1, RadiusRule(RuleKind.DILATED_PLUS, constant))
    else:
        notes.append(f"dilated_plus skipped: C={constant:g} >= {d.shift:g}")
    return rules, notes


def build_condition_report(
    d: Divisor,
    constant: float = 0.5,
    epsilon: float = 0.5,
    compact_radius: float = 0.0,
    grid: Optional[GridSpec] = None,
) -> ConditionReport:
    """Overlap, covering under every rule, separation under the dilated rules, Blaschke and area sums."""
    grid = grid or GridSpec()
    rules, notes = standard_rules(d, constant, epsilon)
    covering = {rule.check_id: check_covering(d, rule, compact_radius, grid) for rule in rules}
    separation = {
        rule.check_id: check_separation(d, rule)
        for rule in rules
        if rule.kind in (RuleKind.DILATED_PLUS, RuleKind.DILATED_MINUS)
    }
    if not any(r.kind is RuleKind.DILATED_PLUS for r in rules):
        notes.append("separation:dilated_plus not evaluated")
    minus = RadiusRule(RuleKind.DILATED_MINUS, constant)
    return ConditionReport(
        overlap_constant=overlap_constant(d, grid),
        covering=covering,
        separation=separation,
        blaschke_sum=blaschke_sum(d),
        area_sum=euclidean_area_sum(d, minus),
        notes=notes,
    )
