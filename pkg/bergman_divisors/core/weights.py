"""
weights — ingredients of the ∂̄-surgery weights and of the Jensen-type budget

Per point λ of multiplicity m, with exponent e (α+ε, α+1 or α by mode):
    r  = √(m / (m + e))            inner (critical) radius
    r' = √((m + C) / (m + e))      outer (dilated) radius, ∂̄ modes only
    K  = ∫_{r<|ζ|<r'} ln(1/|ζ|²) dν(ζ)
    ξ(t) = ln(1/t²)/K on (r, r'),  so ∫ ξ dν = 1

Measure convention: dm = dA/π (m(𝕌) = 1), dν = (1-|z|²)^{-2} dm, and
Δ̃ = (1-|z|²)² Δ, so Δ̃u dν = Δu dm.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate

from .divisor import Divisor, PSpace, RadiusRule, RuleKind, check_separation, radius_for
from .errors import ConstraintError, DomainError, PreconditionError, ResolutionError
from .hypgeo import DiskPoint, PointLike, PseudoDisk, as_point, invariant_mass_quadrature, pseudo_to_euclid, rho

logger = logging.getLogger(__name__)

GL_NODES = 32
GL_PANELS = 4
FD_REL_STEP = 1e-4
FD_MIN_STEP = 1e-7
JENSEN_MIN_GAP = 1e-9
INV_E = math.exp(-1.0)


class WeightMode(str, Enum):
    UNIQUENESS_EPS = "uniqueness_eps"
    DBAR_P2 = "dbar_p2"
    DBAR_PINF = "dbar_pinf"


@dataclass(frozen=True)
class WeightParams:
    alpha: float
    constant: float
    mode: WeightMode

    def __post_init__(self) -> None:
        mode = WeightMode(self.mode)
        object.__setattr__(self, "mode", mode)
        a, c = float(self.alpha), float(self.constant)
        if not (math.isfinite(a) and math.isfinite(c)) or c <= 0:
            raise DomainError(f"alpha must be finite and the constant positive, got alpha={a}, C={c}")
        if mode is WeightMode.UNIQUENESS_EPS:
            if a <= -1:
                raise DomainError(f"alpha must exceed -1, got {a}")
        elif mode is WeightMode.DBAR_P2:
            if a <= -1 or not (a + 1) * (1 - INV_E) < c < a + 1:
                raise ConstraintError(f"dbar_p2 needs (α+1)(1-1/e) < C < α+1; got alpha={a:g}, C={c:g}")
        else:
            if a <= 0 or not a * (1 - INV_E) < c < a:
                raise ConstraintError(f"dbar_pinf needs α(1-1/e) < C < α; got alpha={a:g}, C={c:g}")

    @property
    def exponent(self) -> float:
        if self.mode is WeightMode.UNIQUENESS_EPS:
            return self.alpha + self.constant
        if self.mode is WeightMode.DBAR_P2:
            return self.alpha + 1
        return self.alpha

    @property
    def p(self) -> PSpace:
        return PSpace.INFINITY if self.mode is WeightMode.DBAR_PINF else PSpace.TWO

    def to_dict(self) -> Dict[str, Any]:
        return {"alpha": self.alpha, "constant": self.constant, "mode": self.mode.value, "exponent": self.exponent}


def inner_radius(m: int, params: WeightParams) -> float:
    return math.sqrt(m / (m + params.exponent))


def outer_radius(m: int, params: WeightParams) -> float:
    if params.mode is WeightMode.UNIQUENESS_EPS:
        raise ConstraintError("the outer radius is defined for the dbar modes only")
    return math.sqrt((m + params.constant) / (m + params.exponent))


def _h(r: float) -> float:
    r2 = r * r
    return r2 / (1 - r2) * -math.log(r2)


def K_constant(m: int, c: float, alpha: float, mode: WeightMode) -> float:
    """K = h(r') - h(r) + ln((1-r²)/(1-r'²)), h(r) = r²/(1-r²)·ln(1/r²)."""
    params = WeightParams(alpha, c, WeightMode(mode))
    if params.mode is WeightMode.UNIQUENESS_EPS:
        raise ConstraintError("K is defined for the dbar modes only")
    e = params.exponent
    r, r1 = inner_radius(m, params), outer_radius(m, params)
    return _h(r1) - _h(r) + math.log(e / (e - c))


def K_lower_bound(c: float, alpha: float, mode: WeightMode) -> float:
    """ln(e/(e - C)); exceeds 1 exactly when C > e(1 - 1/e)."""
    e = WeightParams(alpha, c, WeightMode(mode)).exponent
    return math.log(e / (e - c))


@dataclass(frozen=True)
class WeightProfile:
    lam: DiskPoint
    m: int
    r_inner: float
    r_outer: float
    K_value: float

    def __post_init__(self) -> None:
        if not 0 < self.r_inner < self.r_outer < 1:
            raise DomainError(f"profile radii must satisfy 0 < r < r' < 1, got {self.r_inner}, {self.r_outer}")

    def to_dict(self) -> Dict[str, Any]:
        return {"lam": self.lam.to_dict(), "m": self.m, "r_inner": self.r_inner, "r_outer": self.r_outer,
                "K": self.K_value}


def weight_profile(lam: PointLike, m: int, params: WeightParams) -> WeightProfile:
    return WeightProfile(
        DiskPoint(as_point(lam)), m, inner_radius(m, params), outer_radius(m, params),
        K_constant(m, params.constant, params.alpha, params.mode),
    )


def xi(t: float, profile: WeightProfile) -> float:
    """ξ(t) = ln(1/t²)/K on (r, r'), 0 elsewhere."""
    if not 0 <= t < 1:
        raise DomainError(f"modulus must lie in [0, 1), got {t}")
    if profile.r_inner < t < profile.r_outer:
        return -2 * math.log(t) / profile.K_value
    return 0.0


def _nu_density(t: float) -> float:
    return 2 * t / (1 - t * t) ** 2


def K_quadrature(m: int, c: float, alpha: float, mode: WeightMode) -> float:
    """∫_{r<|ζ|<r'} ln(1/|ζ|²) dν(ζ) by adaptive radial quadrature."""
    params = WeightParams(alpha, c, WeightMode(mode))
    r, r1 = inner_radius(m, params), outer_radius(m, params)
    value, _ = integrate.quad(lambda t: -2 * math.log(t) * _nu_density(t), r, r1, epsabs=0.0, epsrel=1e-13, limit=200)
    return value


def xi_mass(profile: WeightProfile) -> float:
    """∫ ξ dν over the annulus; 1 up to quadrature error."""
    value, _ = integrate.quad(lambda t: xi(t, profile) * _nu_density(t), profile.r_inner, profile.r_outer,
                              epsabs=0.0, epsrel=1e-13, limit=200)
    return value


# ---------------------------------------------------------------------------
# Subharmonic patch
# ---------------------------------------------------------------------------

def _patch_inside(a: float, r: float, e: float) -> float:
    return 0.5 * e * (math.log1p(-r * r) - math.log1p(-a * a))


def _patch_outside(a: float, r: float, m: int) -> float:
    return m * (math.log(a) - math.log(r)) if a > 0 else -math.inf


def patch_branches(z: PointLike, lam: PointLike, m: int, params: WeightParams) -> Tuple[float, float]:
    """(inside, outside) formulas of the patch at z, both evaluated regardless of position."""
    a = rho(lam, z)
    r = inner_radius(m, params)
    return _patch_inside(a, r, params.exponent), _patch_outside(a, r, m)


def patch_v(z: PointLike, lam: PointLike, m: int, params: WeightParams) -> float:
    """(e/2)·ln((1-r²)/(1-|φ_λ(z)|²)) inside D(λ, r), m·ln(|φ_λ(z)|/r) outside."""
    a = rho(lam, z)
    r = inner_radius(m, params)
    if a < r:
        return _patch_inside(a, r, params.exponent)
    return _patch_outside(a, r, m)


@dataclass
class RadialSlopes:
    inside: float
    outside: float
    exact: float

    def to_dict(self) -> Dict[str, float]:
        return {"inside": self.inside, "outside": self.outside, "exact": self.exact}


def patch_radial_slopes(m: int, params: WeightParams, h: float = 1e-4) -> RadialSlopes:
    """One-sided second-order differences of both branches at |φ| = r; both tend to √(m(m+e))."""
    e = params.exponent
    r = inner_radius(m, params)
    h = min(h, r / 4, (1 - r) / 4)
    inside = (3 * _patch_inside(r, r, e) - 4 * _patch_inside(r - h, r, e) + _patch_inside(r - 2 * h, r, e)) / (2 * h)
    outside = (-3 * _patch_outside(r, r, m) + 4 * _patch_outside(r + h, r, m) - _patch_outside(r + 2 * h, r, m)) / (2 * h)
    return RadialSlopes(inside, outside, math.sqrt(m * (m + e)))


# ---------------------------------------------------------------------------
# Invariant Laplacian
# ---------------------------------------------------------------------------

@dataclass
class LaplacianEstimate:
    value: float
    valid: bool

    def to_dict(self) -> Dict[str, Any]:
        return {"value": self.value if math.isfinite(self.value) else None, "valid": self.valid}


def fd_step(z: complex) -> float:
    return max(FD_REL_STEP * (1 - abs(z)), FD_MIN_STEP)


def invariant_laplacian_fd(
    field: Callable[[complex], float],
    z: PointLike,
    h: Optional[float] = None,
    region: Optional[Callable[[complex], Any]] = None,
) -> LaplacianEstimate:
    """5-point Δ̃ = (1-|z|²)² Δ. Invalid when a value is not finite, the stencil leaves the
    disk, or `region` labels a stencil point differently from z."""
    w = as_point(z)
    h = fd_step(w) if h is None else h
    stencil = [w + h, w - h, w + 1j * h, w - 1j * h]
    if any(abs(s) >= 1 for s in stencil):
        return LaplacianEstimate(math.nan, False)
    if region is not None:
        label = region(w)
        if any(region(s) != label for s in stencil):
            return LaplacianEstimate(math.nan, False)
    center = field(w)
    values = [field(s) for s in stencil]
    if not all(math.isfinite(v) for v in values + [center]):
        return LaplacianEstimate(math.nan, False)
    lap = (math.fsum(values) - 4 * center) / (h * h)
    return LaplacianEstimate(lap * (1 - abs(w) ** 2) ** 2, True)


def patch_region(lam: PointLike, m: int, params: WeightParams) -> Callable[[complex], bool]:
    """Labels points by side of the patch boundary ∂D(λ, r)."""
    r = inner_radius(m, params)
    return lambda z: rho(lam, z) < r


@dataclass
class MassCheck:
    mass_patch: float
    mass_log: float
    mass_quadrature: Optional[float]
    measure: str = "dA/pi"

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


def mass_check(lam: PointLike, m: int, params: WeightParams, quadrature: bool = True) -> MassCheck:
    """Δ̃v-mass of the patch over D(λ, r): 2e·r²/(1-r²) in closed form against 2m."""
    e = params.exponent
    r2 = m / (m + e)
    mass_patch = 2 * e * r2 / (e / (m + e))
    quad = None
    if quadrature:
        quad = 2 * e * invariant_mass_quadrature(PseudoDisk(DiskPoint(as_point(lam)), math.sqrt(r2)))
    return MassCheck(mass_patch, 2.0 * m, quad)


# ---------------------------------------------------------------------------
# Weight w
# ---------------------------------------------------------------------------

def _gl_integral(fn: Callable[[np.ndarray], np.ndarray], lo: float, hi: float) -> float:
    nodes, weights = leggauss(GL_NODES)
    edges = np.linspace(lo, hi, GL_PANELS + 1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        t = 0.5 * (b - a) * nodes + 0.5 * (a + b)
        total += 0.5 * (b - a) * float(np.dot(weights, fn(t)))
    return total


def radial_weight(a: float, profile: WeightProfile) -> float:
    """m[ln a² - (E★ξ)(a)] = -m ∫_{max(a,r)}^{r'} ξ(t) ln(t²/a²) dν(t), using the circle mean ln max(a, t)²."""
    if a >= profile.r_outer:
        return 0.0
    if a <= 0:
        return -math.inf
    lo = max(a, profile.r_inner)
    k = profile.K_value

    def integrand(t: np.ndarray) -> np.ndarray:
        return (-2 * np.log(t) / k) * (2 * np.log(t / a)) * 2 * t / (1 - t * t) ** 2

    return -profile.m * _gl_integral(integrand, lo, profile.r_outer)


def radial_weight_laplacian(a: float, profile: WeightProfile) -> float:
    """Exact Δ̃w at |φ_λ(z)| = a: -4 m ξ(a) on the annulus."""
    return -4 * profile.m * xi(a, profile)


def _check_weight_divisor(d: Divisor, params: WeightParams) -> None:
    if params.mode is WeightMode.UNIQUENESS_EPS:
        raise ConstraintError("weight_w needs a dbar mode")
    if d.alpha != params.alpha or d.p is not params.p:
        raise DomainError(f"divisor (alpha={d.alpha:g}, p={d.p.value}) does not match the weight parameters")
    sep = check_separation(d, RadiusRule(RuleKind.DILATED_PLUS, params.constant))
    if not sep.holds:
        first = sep.violating_pairs[0]
        raise PreconditionError(
            f"dilated disks overlap ({len(sep.violating_pairs)} pairs, first {first.i}-{first.j})"
        )


def weight_w(z: PointLike, d: Divisor, params: WeightParams) -> float:
    """w(z) = m_λ[ln|φ_λ(z)|² - (E★ξ)(φ_λ(z))] on the dilated disk containing z, 0 elsewhere."""
    _check_weight_divisor(d, params)
    w = as_point(z)
    for pt in d.points:
        a = rho(pt.lam, w)
        if a < outer_radius(pt.m, params):
            return radial_weight(a, weight_profile(pt.lam, pt.m, params))
    return 0.0


def weight_laplacian_lower_bound(params: WeightParams, k_value: float) -> float:
    return -4 * params.exponent / k_value


def ohsawa_weight(z: PointLike, d: Divisor, params: WeightParams) -> float:
    """e·ln(1/(1-|z|²)) + w(z)."""
    w = as_point(z)
    return -params.exponent * math.log1p(-abs(w) ** 2) + weight_w(w, d, params)


def ohsawa_curvature_floor(params: WeightParams, k_value: float) -> float:
    """4e(1 - 1/K): lower bound of Δ̃ of the Ohsawa weight."""
    return 4 * params.exponent * (1 - 1 / k_value)


def cutoff_gradient_bound(z: PointLike, lam: PointLike, r: float, r_outer: float) -> float:
    """½·|η'|·|φ_λ'(z)| for the linear radial cut-off η from 1 at r to 0 at r'."""
    w = as_point(z)
    a = rho(lam, w)
    return 0.5 / (r_outer - r) * (1 - a * a) / (1 - abs(w) ** 2)


@dataclass
class DbarBoundRow:
    index: int
    m: int
    ratio: float
    ratio_bound: float
    slope: float
    slope_reference: float
    holds: bool

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


@dataclass
class DbarBoundReport:
    rows: List[DbarBoundRow]
    separated: bool

    @property
    def holds(self) -> bool:
        return all(row.holds for row in self.rows)

    def to_dict(self) -> Dict[str, Any]:
        return {"rows": [row.to_dict() for row in self.rows], "separated": self.separated, "holds": self.holds}


def dbar_ingredient_bounds(d: Divisor, params: WeightParams) -> DbarBoundReport:
    """Per point (1-r²)/(r'-r) = (r'+r)e/C ≤ 2e/C, and the cut-off slope 1/(r'-r) against 2(m+e)/C.

    Separation of the dilated disks is reported, not required.
    """
    if params.mode is WeightMode.UNIQUENESS_EPS:
        raise ConstraintError("dbar bounds need a dbar mode")
    e, c = params.exponent, params.constant
    rows = []
    for i, pt in enumerate(d.points):
        r, r1 = inner_radius(pt.m, params), outer_radius(pt.m, params)
        ratio = (1 - r * r) / (r1 - r)
        bound = 2 * e / c
        rows.append(DbarBoundRow(i, pt.m, ratio, bound, 1 / (r1 - r), 2 * (pt.m + e) / c,
                                 ratio <= bound * (1 + 1e-12)))
    separated = check_separation(d, RadiusRule(RuleKind.DILATED_PLUS, c)).holds if d.shift > c else False
    return DbarBoundReport(rows, separated)


# ---------------------------------------------------------------------------
# Jensen budget
# ---------------------------------------------------------------------------

@dataclass
class JensenBudget:
    lhs: float
    rhs: float
    log_term: float

    @property
    def normalized(self) -> float:
        """lhs / ln(1/(1-r²)); ½ under full covering, α/(2(α+ε)) is the zero-divisor budget."""
        return self.lhs / self.log_term

    def to_dict(self) -> Dict[str, float]:
        return {"lhs": self.lhs, "rhs": self.rhs, "log_term": self.log_term, "normalized": self.normalized}


def _arc_inside(t: float, c_abs: float, big_r: float) -> float:
    """Angle of the circle |z| = t inside the Euclidean disk |z - c| < R."""
    if t <= big_r - c_abs:
        return 2 * math.pi
    if t >= c_abs + big_r or t <= c_abs - big_r:
        return 0.0
    cos_half = (t * t + c_abs * c_abs - big_r * big_r) / (2 * t * c_abs)
    return 2 * math.acos(min(1.0, max(-1.0, cos_half)))


def disk_log_mass(center: complex, big_r: float, r: float) -> float:
    """∫_{D(0,r) ∩ {|z-c|<R}} ln(r/|z|) dν(z), as a radial quadrature of the arc length."""
    c_abs = abs(center)
    lo = max(0.0, c_abs - big_r)
    hi = min(r, c_abs + big_r)
    if hi <= lo:
        return 0.0

    def integrand(t: float) -> float:
        return _arc_inside(t, c_abs, big_r) * math.log(r / t) * t / (1 - t * t) ** 2 / math.pi if t > 0 else 0.0

    points = [p for p in (big_r - c_abs,) if lo < p < hi]
    value, _ = integrate.quad(integrand, lo, hi, points=points or None, epsabs=1e-13, epsrel=1e-11, limit=400)
    return value


def jensen_budget(d: Divisor, params: WeightParams, r: float) -> JensenBudget:
    """lhs = ∫_{D(0,r)} Σ_λ χ_{D_λ} ln(r/|z|) dν over the uniqueness disks, rhs = α_∞/(2(α_∞+ε))·ln(1/(1-r²)).

    α_∞ = α for p=∞ and α+2 for p=2 (A²_α ⊂ A^∞_{α+2}).
    """
    if params.mode is not WeightMode.UNIQUENESS_EPS:
        raise ConstraintError("jensen_budget needs uniqueness_eps mode")
    if d.alpha != params.alpha:
        raise DomainError(f"divisor alpha {d.alpha:g} does not match weight alpha {params.alpha:g}")
    if not 0 < r < 1:
        raise DomainError(f"r must lie in (0, 1), got {r}")
    if 1 - r < JENSEN_MIN_GAP:
        raise ResolutionError(f"r = {r!r} is too close to 1 for the radial quadrature")
    eps = params.constant
    alpha_inf = d.alpha + 2 if d.p is PSpace.TWO else d.alpha
    rule = RadiusRule(RuleKind.UNIQUENESS_EPS, eps)
    terms = []
    for pt in d.points:
        radius = radius_for(d, pt.m, rule)
        e_disk = pseudo_to_euclid(PseudoDisk(pt.lam, radius))
        terms.append(disk_log_mass(e_disk.center, e_disk.radius, r))
    log_term = -math.log1p(-r * r)
    lhs = math.fsum(terms)
    logger.debug("jensen budget at r=%g: %d disks, lhs=%.6g", r, len(terms), lhs)
    return JensenBudget(lhs, alpha_inf / (2 * (alpha_inf + eps)) * log_term, log_term)
