"""
model — truncated orthonormal-basis model of A²_α

Functions are coefficient vectors in the orthonormal basis
    e_n(z) = c_n z^n,   c_n² = 1/((α+1) β(n+1, α+1)) = Γ(n+α+2)/(Γ(n+1) Γ(α+2)).

The translation operator is fixed to the branch
    T_λ f(z) = (1-|λ|²)^{s/2} (1-λ̄z)^{-s} f(φ_λ(z)),   s = 2+α,
which is an involution and self-adjoint, so ⟨f, T_λ e_j⟩ is the j-th
coordinate of T_λ f. Output coefficient k of T_λ f depends only on f, not on
the truncation degree; the truncation only loses the tail energy.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy import integrate, optimize

from .divisor import Divisor, PSpace
from .errors import DegreeError, DomainError
from .hypgeo import DiskPoint, PointLike, as_point, rho_array
from .specfun import basis_log_weights, find_a_eta, reg_inc_beta_array

logger = logging.getLogger(__name__)

TAIL_WARN_TOL = 1e-8
GRAM_TAIL_BOUND = 1e-8
PINV_CUTOFF = 1e-10
EIG_CLIP = 1e-10
SUP_RADIAL_SAMPLES = 400
SUP_MIN_ANGLES = 64


def basis_norms(alpha: float, degree: int) -> np.ndarray:
    """c_0..c_N with e_n = c_n z^n."""
    if alpha <= -1:
        raise DomainError(f"alpha must exceed -1, got {alpha}")
    return np.exp(0.5 * basis_log_weights(alpha, np.arange(degree + 1, dtype=float)))


@dataclass(frozen=True)
class TruncatedFunction:
    alpha: float
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        if not self.alpha > -1:
            raise DomainError(f"alpha must exceed -1, got {self.alpha}")
        arr = np.array(self.coeffs, dtype=complex).ravel()
        if arr.size == 0:
            raise DomainError("a truncated function needs at least one coefficient")
        if not np.all(np.isfinite(arr)):
            raise DomainError("coefficients must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "coeffs", arr)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def norm_sq(self) -> float:
        return math.fsum((np.abs(self.coeffs) ** 2).tolist())

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def monomial_coeffs(self) -> np.ndarray:
        return self.coeffs * basis_norms(self.alpha, self.degree)

    def padded(self, degree: int) -> "TruncatedFunction":
        if degree < self.degree:
            raise DomainError(f"cannot pad degree {self.degree} down to {degree}")
        out = np.zeros(degree + 1, dtype=complex)
        out[: self.coeffs.size] = self.coeffs
        return TruncatedFunction(self.alpha, out)

    def __call__(self, z: Any) -> Any:
        return evaluate(self, z)

    @classmethod
    def from_monomial_coeffs(cls, alpha: float, b: Sequence[complex]) -> "TruncatedFunction":
        b = np.asarray(b, dtype=complex)
        return cls(alpha, b / basis_norms(alpha, b.size - 1))

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "TruncatedFunction":
        coeffs = [complex(re, im) for re, im in data["coeffs"]]
        if "degree" in data and int(data["degree"]) != len(coeffs) - 1:
            raise DomainError(f"degree {data['degree']} does not match {len(coeffs)} coefficients")
        return cls(float(data["alpha"]), coeffs)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "alpha": self.alpha,
            "degree": self.degree,
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
        }


def basis_vector(alpha: float, n: int, degree: Optional[int] = None) -> TruncatedFunction:
    degree = n if degree is None else degree
    if not 0 <= n <= degree:
        raise DomainError(f"basis index must lie in [0, {degree}], got {n}")
    coeffs = np.zeros(degree + 1, dtype=complex)
    coeffs[n] = 1.0
    return TruncatedFunction(alpha, coeffs)


def monomial(alpha: float, n: int) -> TruncatedFunction:
    """z ↦ z^n."""
    b = np.zeros(n + 1, dtype=complex)
    b[n] = 1.0
    return TruncatedFunction.from_monomial_coeffs(alpha, b)


def evaluate(f: TruncatedFunction, z: Any) -> Any:
    """Σ a_n e_n(z) by Horner on the monomial coefficients; accepts scalars or arrays."""
    if isinstance(z, DiskPoint):
        z = z.value
    return npoly.polyval(z, f.monomial_coeffs())


def growth_bound(f: TruncatedFunction, z: PointLike) -> Tuple[float, float]:
    """(|f(z)|², ‖f‖²/(1-|z|²)^{α+2}); the first never exceeds the second."""
    w = as_point(z)
    value = abs(evaluate(f, w)) ** 2
    return value, f.norm_sq() / (1 - abs(w) ** 2) ** (f.alpha + 2)


# ---------------------------------------------------------------------------
# Translation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SampleIndex:
    lam: DiskPoint
    j: int

    def __post_init__(self) -> None:
        if not isinstance(self.lam, DiskPoint):
            object.__setattr__(self, "lam", DiskPoint(complex(self.lam)))
        if self.j < 0:
            raise DomainError(f"sample index j must be >= 0, got {self.j}")

    def key(self) -> str:
        return f"{self.lam.value.real!r},{self.lam.value.imag!r},{self.j}"


@dataclass
class TranslationResult:
    function: TruncatedFunction
    tail_energy: float
    warning: Optional[str] = None


def suggest_out_degree(degree: int, lam: PointLike, alpha: float, tol: float = TAIL_WARN_TOL) -> int:
    """Truncation degree at which T_λ of a degree-`degree` function should leave a tail below tol.

    The bulk of T_λ e_n sits near index n(1+|λ|)/(1-|λ|); past it the
    coefficients decay like |λ|^k.
    """
    rho = abs(as_point(lam))
    if rho == 0:
        return degree
    stretch = (1 + rho) / (1 - rho)
    decay = math.log(tol) / math.log(rho) * stretch
    return int(math.ceil(degree * stretch + decay + alpha + 10))


def _translation_matrix(lam: complex, alpha: float, degree: int, out_degree: int) -> np.ndarray:
    """Columns j = 0..degree hold the coordinates 0..out_degree of T_λ e_j."""
    s = alpha + 2
    n_out = out_degree + 1
    lam_c = lam.conjugate()
    mod2 = abs(lam) ** 2
    k = np.arange(1, n_out, dtype=float)

    # (1 - λ̄z)^{-s} and φ_λ(z) = λ - (1-|λ|²) Σ_{k≥1} λ̄^{k-1} z^k
    g0 = np.ones(n_out, dtype=complex)
    g0[1:] = np.cumprod((s + k - 1) / k * lam_c)
    phi = np.empty(n_out, dtype=complex)
    phi[0] = lam
    lam_pow = np.ones(n_out - 1, dtype=complex)
    lam_pow[1:] = np.cumprod(np.full(max(n_out - 2, 0), lam_c))
    phi[1:] = -(1 - mod2) * lam_pow

    norms = basis_norms(alpha, out_degree)
    scale = (1 - mod2) ** (s / 2)
    out = np.empty((n_out, degree + 1), dtype=complex)
    power = np.zeros(n_out, dtype=complex)
    power[0] = 1.0
    for j in range(degree + 1):
        if j:
            power = np.convolve(power, phi)[:n_out]
        out[:, j] = np.convolve(g0, power)[:n_out] * (scale * norms[j]) / norms
    return out


def translate(f: TruncatedFunction, lam: PointLike, out_degree: int) -> TranslationResult:
    """Coordinates of T_λ f up to out_degree, plus the lost tail energy ‖f‖² - ‖output‖²."""
    w = as_point(lam)
    if out_degree < f.degree:
        raise DomainError(f"out_degree {out_degree} is below the input degree {f.degree}")
    coeffs = _translation_matrix(w, f.alpha, f.degree, out_degree) @ f.coeffs
    out = TruncatedFunction(f.alpha, coeffs)
    tail = max(f.norm_sq() - out.norm_sq(), 0.0)
    warning = None
    if tail > TAIL_WARN_TOL * max(f.norm_sq(), 1.0):
        suggested = suggest_out_degree(f.degree, w, f.alpha)
        warning = f"tail energy {tail:.3e} exceeds {TAIL_WARN_TOL:g}; suggested out_degree {suggested}"
        logger.debug("translate at lambda=%s: %s", w, warning)
    return TranslationResult(out, tail, warning)


def sample_coeff(f: TruncatedFunction, s: SampleIndex, out_degree: int) -> complex:
    """⟨f, T_λ e_j⟩, i.e. the j-th coordinate of T_λ f."""
    if s.j >= out_degree:
        raise DomainError(f"sample index j={s.j} must be below out_degree={out_degree}")
    result = translate(f, s.lam, out_degree)
    if result.warning:
        logger.warning("sample (%s, %d): %s", s.lam.value, s.j, result.warning)
    return complex(result.function.coeffs[s.j])


# ---------------------------------------------------------------------------
# Local norms
# ---------------------------------------------------------------------------

def local_norm_sq(f: TruncatedFunction, r: float) -> float:
    """(α+1)∫_{D(0,r)} |f|²(1-|z|²)^α dm = Σ_n I(r²; n+1, α+1)|a_n|²."""
    if not 0 < r <= 1:
        raise DomainError(f"radius must lie in (0, 1], got {r}")
    if r == 1:
        return f.norm_sq()
    n = np.arange(f.degree + 1, dtype=float)
    weights = reg_inc_beta_array(r * r, n + 1, f.alpha + 1)
    return math.fsum((weights * np.abs(f.coeffs) ** 2).tolist())


def local_norm_quadrature(f: TruncatedFunction, r: float, epsrel: float = 1e-11) -> float:
    """The same local norm by 2-D adaptive quadrature in polar coordinates, dm = dA/π."""
    if not 0 < r < 1:
        raise DomainError(f"radius must lie in (0, 1), got {r}")
    b = f.monomial_coeffs()
    alpha = f.alpha

    def density(s: float, theta: float) -> float:
        value = npoly.polyval(s * complex(math.cos(theta), math.sin(theta)), b)
        return abs(value) ** 2 * (1 - s * s) ** alpha * s

    value, _ = integrate.dblquad(density, 0.0, 2 * math.pi, 0.0, r, epsabs=0.0, epsrel=epsrel)
    return (alpha + 1) * value / math.pi


@dataclass
class LocalControlResult:
    lhs: float
    rhs: float
    ratio: float
    radius: float

    def to_dict(self) -> Dict[str, Any]:
        finite = math.isfinite(self.ratio)
        return {"lhs": self.lhs, "rhs": self.rhs, "ratio": self.ratio if finite else None,
                "ratio_is_infinite": not finite, "radius": self.radius}


def local_coeff_control_check(
    f: TruncatedFunction, lam: PointLike, m: int, c: float, out_degree: Optional[int] = None
) -> LocalControlResult:
    """Σ_{j<m}|⟨f, T_λ e_j⟩|² against the local norm of T_λ f on D(0, √((m-c)/(m+α+1)))."""
    if c <= 0 or m < c + 1:
        raise DomainError(f"needs c > 0 and m >= c+1, got m={m}, c={c}")
    w = as_point(lam)
    if out_degree is None:
        out_degree = max(suggest_out_degree(f.degree, w, f.alpha), m)
    g = translate(f, w, max(out_degree, f.degree, m)).function
    lhs = math.fsum((np.abs(g.coeffs[:m]) ** 2).tolist())
    radius = math.sqrt((m - c) / (m + f.alpha + 1))
    rhs = local_norm_sq(g, radius)
    if rhs > 0:
        ratio = lhs / rhs
    else:
        ratio = 0.0 if lhs == 0 else math.inf
    return LocalControlResult(lhs, rhs, ratio, radius)


@dataclass
class LocalControlP2Result:
    applicable: bool
    hypothesis: bool
    conclusion: bool
    holds: bool
    a: Optional[float]
    head_energy: float
    local_at_critical: float
    local_at_shrunk: Optional[float]

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


def local_control_p2(f: TruncatedFunction, m: int, eta: float, m_max: int = 500) -> LocalControlP2Result:
    """Implication: Σ_{j<m}|a_j|² ≤ η/2 and ‖f‖²_{D(0,r_m)} ≤ 1 ⇒ ‖f‖²_{D(0,r_{m-a})} ≤ η, a = a(η/2).

    Vacuously true when the hypothesis fails; flagged inapplicable when m < a.
    """
    if not 0 < eta <= 1:
        raise DomainError(f"eta must lie in (0, 1], got {eta}")
    big = m + f.alpha + 1
    head = math.fsum((np.abs(f.coeffs[:m]) ** 2).tolist())
    critical = local_norm_sq(f, math.sqrt(m / big))
    sweep = find_a_eta(f.alpha, eta / 2, m_max=max(m_max, m))
    a = sweep.a
    if a is None or m < a:
        return LocalControlP2Result(False, False, True, True, a, head, critical, None)
    hypothesis = head <= eta / 2 and critical <= 1
    shrunk = local_norm_sq(f, math.sqrt((m - a) / big)) if m > a else 0.0
    conclusion = shrunk <= eta
    return LocalControlP2Result(True, hypothesis, conclusion, (not hypothesis) or conclusion, a, head, critical, shrunk)


# ---------------------------------------------------------------------------
# Gram systems, frames, interpolation
# ---------------------------------------------------------------------------

@dataclass
class GramSystem:
    indices: List[SampleIndex]
    gram: np.ndarray
    analysis_map: np.ndarray
    degree: int
    max_tail: float
    tails: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def to_dict(self) -> Dict[str, Any]:
        return {"samples": len(self.indices), "degree": self.degree, "max_tail": self.max_tail}


def build_gram(d: Divisor, degree: int, tail_bound: float = GRAM_TAIL_BOUND) -> GramSystem:
    """Analysis map rows conj(T_λ e_j) over the degree-N truncation and Gram G = A A*."""
    if d.p is not PSpace.TWO:
        raise DomainError("the Gram model lives in A²_α; got a p=inf divisor")
    if degree + 1 < d.max_multiplicity:
        raise DomainError(f"degree {degree} cannot hold multiplicity {d.max_multiplicity}")
    indices: List[SampleIndex] = []
    rows: List[np.ndarray] = []
    tails: List[float] = []
    for pt in d.points:
        block = _translation_matrix(pt.lam.value, d.alpha, pt.m - 1, degree)
        col_tails = np.maximum(1.0 - np.sum(np.abs(block) ** 2, axis=0), 0.0)
        worst = int(np.argmax(col_tails))
        if col_tails[worst] > tail_bound:
            suggested = suggest_out_degree(pt.m - 1, pt.lam, d.alpha, tail_bound)
            raise DegreeError(
                f"column T_λ e_{worst} at λ={pt.lam.value} leaves tail {col_tails[worst]:.3e} > {tail_bound:g}",
                suggested_degree=max(suggested, degree + 1),
            )
        for j in range(pt.m):
            indices.append(SampleIndex(pt.lam, j))
            rows.append(np.conj(block[:, j]))
            tails.append(float(col_tails[j]))
    analysis = np.array(rows, dtype=complex).reshape(len(rows), degree + 1)
    gram = analysis @ analysis.conj().T
    tail_arr = np.array(tails)
    return GramSystem(indices, gram, analysis, degree, float(tail_arr.max(initial=0.0)), tail_arr)


@dataclass
class FrameBounds:
    lower: float
    upper: float

    def to_dict(self) -> Dict[str, float]:
        return {"lower": self.lower, "upper": self.upper}


def frame_bounds(g: GramSystem, degree: Optional[int] = None) -> FrameBounds:
    """Extreme eigenvalues of the frame operator S = A*A on the (N+1)-dimensional space."""
    if degree is not None and degree != g.degree:
        raise DomainError(f"Gram system was built at degree {g.degree}, not {degree}")
    a = g.analysis_map
    if a.shape[0] == 0:
        return FrameBounds(0.0, 0.0)
    eig = np.linalg.eigvalsh(a.conj().T @ a)
    lower, upper = float(eig[0]), float(eig[-1])
    if a.shape[0] < a.shape[1] or -EIG_CLIP <= lower < 0:
        lower = 0.0
    return FrameBounds(lower, upper)


@dataclass
class InterpolationResult:
    function: TruncatedFunction
    residual: float
    rank: int
    cutoff: float

    @property
    def norm(self) -> float:
        return self.function.norm()

    def to_dict(self) -> Dict[str, Any]:
        return {"function": self.function.to_dict(), "residual": self.residual, "rank": self.rank,
                "cutoff": self.cutoff, "norm": self.norm}


def interpolate(
    d: Divisor,
    targets: Mapping[SampleIndex, complex],
    degree: int,
    cutoff: float = PINV_CUTOFF,
    tail_bound: float = GRAM_TAIL_BOUND,
) -> InterpolationResult:
    """Minimum-norm f with ⟨f, T_λ e_j⟩ = v_{λ,j}, by SVD with relative singular-value cutoff."""
    g = build_gram(d, degree, tail_bound)
    expected = set(g.indices)
    if set(targets) != expected:
        missing = len(expected - set(targets))
        extra = len(set(targets) - expected)
        raise DomainError(f"targets must match the divisor's index set ({missing} missing, {extra} extra)")
    v = np.array([complex(targets[s]) for s in g.indices], dtype=complex)
    a = g.analysis_map
    if a.shape[0] == 0:
        return InterpolationResult(TruncatedFunction(d.alpha, np.zeros(degree + 1)), 0.0, 0, cutoff)
    u, sigma, vh = np.linalg.svd(a, full_matrices=False)
    rank = int((sigma > cutoff * sigma[0]).sum())
    coeffs = vh[:rank].conj().T @ ((u[:, :rank].conj().T @ v) / sigma[:rank])
    residual = float(np.linalg.norm(a @ coeffs - v))
    return InterpolationResult(TruncatedFunction(d.alpha, coeffs), residual, rank, cutoff)


def bessel_sum(d: Divisor, z: PointLike) -> float:
    """Σ_λ Σ_{j<m_λ} |⟨T_z 1, T_λ e_j⟩|² in closed form, Σ_λ F_{m_λ,α}(ρ(z, λ))."""
    w = as_point(z)
    if len(d) == 0:
        return 0.0
    t = rho_array(d.centers, w)
    values = reg_inc_beta_array(1.0 - t * t, d.alpha + 2, d.multiplicities.astype(float))
    return math.fsum(np.asarray(values).tolist())


# ---------------------------------------------------------------------------
# A^∞ norm
# ---------------------------------------------------------------------------

@dataclass
class SupNormResult:
    value: float
    argmax: complex

    def to_dict(self) -> Dict[str, Any]:
        return {"value": self.value, "argmax": {"re": self.argmax.real, "im": self.argmax.imag}}


def sup_norm_inf(
    f: TruncatedFunction,
    alpha_inf: float,
    radial_samples: int = SUP_RADIAL_SAMPLES,
    angles: Optional[int] = None,
) -> SupNormResult:
    """max_z (1-|z|²)^{α/2}|f(z)| on a polar grid, refined by bounded scalar searches around the best node."""
    if alpha_inf <= 0:
        raise DomainError(f"alpha_inf must be positive, got {alpha_inf}")
    b = f.monomial_coeffs()
    n_theta = angles or max(SUP_MIN_ANGLES, 4 * (f.degree + 1))
    radii = np.linspace(0.0, 1.0, radial_samples, endpoint=False)
    theta = 2 * np.pi * np.arange(n_theta) / n_theta
    z = radii[:, None] * np.exp(1j * theta)[None, :]
    weighted = (1 - radii[:, None] ** 2) ** (alpha_inf / 2) * np.abs(npoly.polyval(z, b))
    i, k = np.unravel_index(int(np.argmax(weighted)), weighted.shape)

    def neg(r: float, th: float) -> float:
        return -((1 - r * r) ** (alpha_inf / 2)) * abs(npoly.polyval(r * complex(math.cos(th), math.sin(th)), b))

    dr = radii[1] - radii[0]
    r_best, th_best = float(radii[i]), float(theta[k])
    for _ in range(2):
        res = optimize.minimize_scalar(lambda r: neg(r, th_best), bounds=(max(r_best - dr, 0.0), min(r_best + dr, 1 - 1e-12)),
                                       method="bounded", options={"xatol": 1e-12})
        if -res.fun >= -neg(r_best, th_best):
            r_best = float(res.x)
        dth = 2 * np.pi / n_theta
        res = optimize.minimize_scalar(lambda th: neg(r_best, th), bounds=(th_best - dth, th_best + dth),
                                       method="bounded", options={"xatol": 1e-12})
        if -res.fun >= -neg(r_best, th_best):
            th_best = float(res.x)
    return SupNormResult(-neg(r_best, th_best), r_best * complex(math.cos(th_best), math.sin(th_best)))
