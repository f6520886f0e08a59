"""
specfun — Gamma, Beta and incomplete Beta/Gamma evaluation

Everything the divisor lemmas need from special-function land:
    - ln Γ, β(a, b), Γ(a, b) with products of Gammas kept in log space
    - regularized incomplete beta I(x; a, b) by the modified Lentz continued
      fraction, symmetry switch at x = a/(a+b), scalar and vectorized forms
    - the kernel tail F_{m,α}(t) and its complement R_{m,α}(t)
    - ϑ_{m,α}(t) for the A^∞ radii
    - sweep helpers for the local-energy and dilation-ratio estimates

Values are exponentiated last; anything that cannot be represented as a
finite double raises SpecialOverflowError instead of returning inf.
"""

from __future__ import annotations

import logging
import math
import sys
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
from scipy import special

from .errors import DomainError, SpecialOverflowError

logger = logging.getLogger(__name__)

CF_MAX_ITER = 10000
CF_EPS = 3.0e-16
CF_TINY = 1.0e-300

LOG_DOUBLE_MAX = math.log(sys.float_info.max)
LOG_DOUBLE_MIN = math.log(sys.float_info.min)

# j - m offsets sampled by the dilation-ratio sweep
DILATION_J_OFFSETS: Tuple[int, ...] = (0, 1, 2, 3, 5, 10, 20, 50, 100, 200, 500, 1000)


@dataclass(frozen=True)
class BetaParams:
    """Shape parameters (a, b) of β(a, b); a = n+1 or j+1, b = α+1 in the lemmas."""

    a: float
    b: float

    def __post_init__(self) -> None:
        for name, value in (("a", self.a), ("b", self.b)):
            if not math.isfinite(value) or value <= 0:
                raise DomainError(f"beta parameter {name} must be finite and > 0, got {value}")


@dataclass(frozen=True)
class EvalResult:
    value: float
    abs_error_bound: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise DomainError(f"EvalResult value must be finite, got {self.value}")
        if not self.abs_error_bound >= 0:
            raise DomainError(f"abs_error_bound must be >= 0, got {self.abs_error_bound}")

    def to_dict(self) -> Dict[str, Any]:
        return {"value": self.value, "abs_error_bound": self.abs_error_bound}


def _require_positive(value: float, name: str) -> float:
    x = float(value)
    if not math.isfinite(x) or x <= 0:
        raise DomainError(f"{name} must be finite and > 0, got {value}")
    return x


def _require_alpha(alpha: float) -> float:
    a = float(alpha)
    if not math.isfinite(a) or a <= -1:
        raise DomainError(f"alpha must be > -1, got {alpha}")
    return a


def _require_multiplicity(m: int) -> int:
    if int(m) != m or m < 1:
        raise DomainError(f"multiplicity must be a positive integer, got {m}")
    return int(m)


# ---------------------------------------------------------------------------
# Gamma / Beta
# ---------------------------------------------------------------------------

def log_gamma(x: float) -> float:
    """ln Γ(x) for x > 0."""
    return float(special.gammaln(_require_positive(x, "x")))


def log_beta(p: BetaParams) -> float:
    return float(special.betaln(p.a, p.b))


def beta(p: BetaParams) -> float:
    """β(a, b) = Γ(a)Γ(b)/Γ(a+b), formed from log values.

    Raises SpecialOverflowError when the value over- or underflows a double.
    """
    lb = log_beta(p)
    if lb > LOG_DOUBLE_MAX or lb < LOG_DOUBLE_MIN:
        raise SpecialOverflowError(f"beta({p.a}, {p.b}) not representable (log value {lb:.6g})", lb)
    return math.exp(lb)


def beta_eval(p: BetaParams) -> EvalResult:
    lb = log_beta(p)
    value = beta(p)
    return EvalResult(value=value, abs_error_bound=8 * np.finfo(float).eps * (1.0 + abs(lb)) * value)


def inc_gamma_upper(a: float, b: float) -> float:
    """Γ(a, b) = ∫_b^∞ t^{a-1} e^{-t} dt; Γ(a, 0) = Γ(a)."""
    a = _require_positive(a, "a")
    b = float(b)
    if not math.isfinite(b) or b < 0:
        raise DomainError(f"b must be finite and >= 0, got {b}")
    q = float(special.gammaincc(a, b)) if b > 0 else 1.0
    if q == 0.0:
        return 0.0
    lv = float(special.gammaln(a)) + math.log(q)
    if lv > LOG_DOUBLE_MAX:
        raise SpecialOverflowError(f"Gamma({a}, {b}) overflows (log value {lv:.6g})", lv)
    return math.exp(lv)


def gamma_ratio(x: float, s: float) -> float:
    """Γ(x+s) / (x^s Γ(x))."""
    x = _require_positive(x, "x")
    return math.exp(float(special.gammaln(x + s) - special.gammaln(x)) - s * math.log(x))


def gautschi_check(x: float, s: float) -> bool:
    """Whether (x/(x+s))^{1-s} <= Γ(x+s)/(x^s Γ(x)) <= 1 holds for the computed values."""
    x = _require_positive(x, "x")
    if not 0 < s < 1:
        raise DomainError(f"s must lie in (0, 1), got {s}")
    lower = math.exp(-(1.0 - s) * math.log1p(s / x))
    ratio = gamma_ratio(x, s)
    slack = 1e-14
    return lower <= ratio * (1 + slack) and ratio <= 1 + slack


def stirling_ratio(n: float, alpha: float) -> float:
    """β(n+1, α+1) · n^{1+α} / Γ(α+1); tends to 1 as n grows."""
    n = _require_positive(n, "n")
    alpha = _require_alpha(alpha)
    return math.exp(
        float(special.betaln(n + 1, alpha + 1)) + (1 + alpha) * math.log(n) - float(special.gammaln(alpha + 1))
    )


# ---------------------------------------------------------------------------
# Incomplete beta
# ---------------------------------------------------------------------------

def _betacf(a: np.ndarray, b: np.ndarray, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Modified Lentz evaluation of the incomplete-beta continued fraction.

    Lanes freeze once |Δ - 1| < CF_EPS. Returns (fraction, converged).
    """
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = np.ones_like(x)
    d = 1.0 - qab * x / qap
    d = np.where(np.abs(d) < CF_TINY, CF_TINY, d)
    d = 1.0 / d
    h = d.copy()
    done = np.zeros(x.shape, dtype=bool)

    for m in range(1, CF_MAX_ITER + 1):
        m2 = 2.0 * m
        for aa in (
            m * (b - m) * x / ((qam + m2) * (a + m2)),
            -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2)),
        ):
            d = 1.0 + aa * d
            d = np.where(np.abs(d) < CF_TINY, CF_TINY, d)
            c = 1.0 + aa / c
            c = np.where(np.abs(c) < CF_TINY, CF_TINY, c)
            d = 1.0 / d
            delta = d * c
            h = np.where(done, h, h * delta)
        done |= (np.abs(delta - 1.0) < CF_EPS) | ~np.isfinite(h)
        if done.all():
            break

    if not done.all():
        logger.warning("incomplete beta continued fraction did not converge on %d lanes", int((~done).sum()))
    return h, done


def _inc_beta_parts(x: np.ndarray, a: np.ndarray, b: np.ndarray):
    direct = x < a / (a + b)
    aa = np.where(direct, a, b)
    bb = np.where(direct, b, a)
    xx = np.where(direct, x, 1.0 - x)
    cf, _ = _betacf(aa, bb, xx)
    lbt = special.betaln(a, b)
    log_front = a * np.log(x) + b * np.log1p(-x) - lbt
    # front = x^a (1-x)^b / (B(a,b) · shape), shape = a on the direct branch, b otherwise
    front = np.exp(log_front) * cf / aa
    return direct, front, log_front, cf, aa, lbt


def reg_inc_beta_array(x: Any, a: Any, b: Any) -> np.ndarray:
    """Vectorized I(x; a, b); inputs broadcast, no validation."""
    x, a, b = np.broadcast_arrays(
        np.asarray(x, dtype=float), np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    )
    with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
        direct, front, *_ = _inc_beta_parts(x, a, b)
        out = np.where(direct, front, 1.0 - front)
    out = np.where(x <= 0.0, 0.0, np.where(x >= 1.0, 1.0, out))
    return np.clip(out, 0.0, 1.0)


def log_inc_beta_array(x: Any, a: Any, b: Any) -> np.ndarray:
    """Vectorized ln β(x; a, b) (unregularized); -inf at x = 0."""
    x, a, b = np.broadcast_arrays(
        np.asarray(x, dtype=float), np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    )
    with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
        direct, front, log_front, cf, aa, lbt = _inc_beta_parts(x, a, b)
        log_direct = log_front + lbt + np.log(cf) - np.log(aa)
        log_swapped = lbt + np.log1p(-front)
        out = np.where(direct, log_direct, log_swapped)
    out = np.where(x <= 0.0, -np.inf, np.where(x >= 1.0, special.betaln(a, b), out))
    return out


def _require_unit_interval(x: float) -> float:
    x = float(x)
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"x must lie in [0, 1], got {x}")
    return x


def reg_inc_beta(x: float, p: BetaParams) -> float:
    """Regularized incomplete beta I(x; a, b) = β(x; a, b) / β(a, b)."""
    x = _require_unit_interval(x)
    return float(reg_inc_beta_array(x, p.a, p.b))


def reg_inc_beta_eval(x: float, p: BetaParams) -> EvalResult:
    x = _require_unit_interval(x)
    value = reg_inc_beta(x, p)
    if 0.0 < x < 1.0:
        scale = 1.0 + abs(p.a * math.log(x)) + abs(p.b * math.log1p(-x)) + abs(log_beta(p))
    else:
        scale = 0.0
    return EvalResult(value=value, abs_error_bound=32 * np.finfo(float).eps * scale)


def log_inc_beta(x: float, p: BetaParams) -> float:
    x = _require_unit_interval(x)
    return float(log_inc_beta_array(x, p.a, p.b))


# ---------------------------------------------------------------------------
# Kernel tail and ϑ
# ---------------------------------------------------------------------------

def basis_log_weights(alpha: float, j: np.ndarray) -> np.ndarray:
    """ln(1 / ((α+1) β(j+1, α+1))) = ln(Γ(j+α+2) / (Γ(j+1) Γ(α+2)))."""
    return special.gammaln(j + alpha + 2) - special.gammaln(j + 1) - special.gammaln(alpha + 2)


def kernel_tail_F(m: int, alpha: float, t: float) -> float:
    """F_{m,α}(t) = (1-t²)^{α+2} Σ_{j<m} t^{2j} / ((α+1)β(j+1,α+1)), by direct summation."""
    m = _require_multiplicity(m)
    alpha = _require_alpha(alpha)
    t = float(t)
    if not 0.0 <= t < 1.0:
        raise DomainError(f"t must lie in [0, 1), got {t}")
    if t == 0.0:
        return 1.0
    j = np.arange(m, dtype=float)
    logs = basis_log_weights(alpha, j) + 2 * j * math.log(t) + (alpha + 2) * math.log1p(-t * t)
    return math.fsum(np.exp(logs).tolist())


def kernel_tail_R(m: int, alpha: float, t: float) -> float:
    """R_{m,α}(t) = 1 - F_{m,α}(t), computed independently as I(t²; m, α+2).

    Uses the negative-binomial form of the kernel identity
    K(t,t) = (1-t²)^{-α-2} = Σ_j t^{2j} / ((α+1)β(j+1,α+1)).
    """
    m = _require_multiplicity(m)
    alpha = _require_alpha(alpha)
    t = float(t)
    if not 0.0 <= t < 1.0:
        raise DomainError(f"t must lie in [0, 1), got {t}")
    return reg_inc_beta(t * t, BetaParams(m, alpha + 2))


def kernel_tail_F_array(m: int, alpha: float, t: Any) -> np.ndarray:
    """Vectorized F_{m,α}(t) through the closed form I(1-t²; α+2, m)."""
    t = np.asarray(t, dtype=float)
    return reg_inc_beta_array(1.0 - t * t, alpha + 2, m)


def vartheta(m: int, alpha: float, t: float) -> float:
    """ϑ_{m,α}(t) = ln(1 / (t^m (1-t²)^{α/2})); +inf at t = 0."""
    m = _require_multiplicity(m)
    alpha = _require_positive(alpha, "alpha")
    t = float(t)
    if not 0.0 <= t < 1.0:
        raise DomainError(f"t must lie in [0, 1), got {t}")
    if t == 0.0:
        return math.inf
    return -m * math.log(t) - 0.5 * alpha * math.log1p(-t * t)


def vartheta_minimizer(m: int, alpha: float) -> float:
    return math.sqrt(m / (m + alpha))


def vartheta_gap(m: int, alpha: float, c: float) -> float:
    """ϑ(√((m-C)/(m+α))) - ϑ(√(m/(m+α))); requires m > C."""
    if not m > c:
        raise DomainError(f"vartheta gap needs m > C, got m={m}, C={c}")
    t_shift = math.sqrt((m - c) / (m + alpha))
    return vartheta(m, alpha, t_shift) - vartheta(m, alpha, vartheta_minimizer(m, alpha))


def vartheta_gap_limit(alpha: float, c: float) -> float:
    """Limit of vartheta_gap as m -> ∞: C/2 - (α/2) ln((α+C)/α)."""
    return 0.5 * c - 0.5 * alpha * math.log1p(c / alpha)


# ---------------------------------------------------------------------------
# Lemma-sweep helpers
# ---------------------------------------------------------------------------

def local_energy_floor(alpha: float, c: float, n: int) -> float:
    """Rigorous lower bound for I((n-c)/(n+α+1); n+1, α+1), valid for n > c.

    The same value bounds I((m-c)/(m+α+1); n+1, α+1) for every m > n.
    """
    alpha = _require_alpha(alpha)
    if not n > c:
        raise DomainError(f"floor needs n > c, got n={n}, c={c}")
    x = (n - c) / (n + alpha + 1)
    log_x_pow = (n + 1) * math.log(x) - math.log(n + 1)
    if alpha > 0:
        log_lower = alpha * math.log1p(-x) + log_x_pow
    else:
        log_lower = alpha * math.log1p(-x) + log_x_pow - math.log1p((-alpha) / (n + 1) * x / (1 - x))
    return math.exp(log_lower - float(special.betaln(n + 1, alpha + 1)))


def local_energy_uniform_eps(alpha: float, c: float) -> Optional[float]:
    """Uniform constant from the proof for α ∈ (-1, 0]; None for α > 0.

    Both bracket terms use α+1+c, which never exceeds the displayed value.
    """
    alpha = _require_alpha(alpha)
    if alpha > 0:
        return None
    s = alpha + 1 + c
    return (s ** alpha) * math.exp(-s * (2 + c)) / (math.gamma(alpha + 1) * (1 + (-alpha) / s))


def gamma_quantile_bound(alpha: float) -> Tuple[float, float]:
    """(q, ε) with q = Γ(α+2, α)/Γ(α+2) and ε = (1-q)/2."""
    alpha = _require_alpha(alpha)
    q = float(special.gammaincc(alpha + 2, alpha)) if alpha > 0 else 1.0
    return q, 0.5 * (1 - q)


def ratio_bound(alpha: float, a: float) -> float:
    """Explicit upper bound on β((m-a)/(m+α+1); j+1, α+1) / β(m/(m+α+1); j+1, α+1), j >= m >= a."""
    alpha = _require_alpha(alpha)
    if alpha > 0:
        return (alpha + 1 + a) / (1 + a) * (1 + a / (1 + alpha)) ** alpha * math.exp(-a)
    return math.exp(-a) / (1 + alpha)


def dilation_ratios(
    alpha: float, a: float, m_max: int, j_offsets: Sequence[int] = DILATION_J_OFFSETS
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Ratios β((m-a)/(m+α+1); j+1, α+1) / β(m/(m+α+1); j+1, α+1) on the sweep grid.

    Returns (m grid, j grid, ratio grid), each of shape (len(j_offsets), #m).
    """
    m0 = max(1, math.ceil(a))
    m = np.arange(m0, m_max + 1, dtype=float)
    offsets = np.asarray(j_offsets, dtype=float)[:, None]
    mm = np.broadcast_to(m, (offsets.shape[0], m.shape[0]))
    jj = mm + offsets
    denom = mm + alpha + 1
    x_small = np.maximum(mm - a, 0.0) / denom
    x_full = mm / denom
    with np.errstate(invalid="ignore", over="ignore", under="ignore"):
        ratio = np.exp(
            log_inc_beta_array(x_small, jj + 1, alpha + 1) - log_inc_beta_array(x_full, jj + 1, alpha + 1)
        )
    return mm, jj, ratio


@dataclass(frozen=True)
class DilationSweep:
    alpha: float
    eta: float
    a: Optional[float]
    max_ratio: float
    worst_m: int
    worst_j: int
    m_max: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "alpha": self.alpha,
            "eta": self.eta,
            "a": self.a,
            "max_ratio": self.max_ratio,
            "worst_m": self.worst_m,
            "worst_j": self.worst_j,
            "m_max": self.m_max,
        }


def _max_ratio(alpha: float, a: float, m_max: int) -> Tuple[float, int, int]:
    mm, jj, ratio = dilation_ratios(alpha, a, m_max)
    if ratio.size == 0:
        return 0.0, 0, 0
    idx = np.unravel_index(int(np.nanargmax(ratio)), ratio.shape)
    return float(ratio[idx]), int(mm[idx]), int(jj[idx])


@lru_cache(maxsize=64)
def find_a_eta(alpha: float, eta: float, m_max: int = 500, resolution: float = 0.01) -> DilationSweep:
    """Smallest sampled a such that every ratio with j >= m >= a, m <= m_max, is <= η.

    Bisection relies on the maximum ratio decreasing in a. Returns a = None
    when no a below m_max achieves η.
    """
    alpha = _require_alpha(alpha)
    if not 0 < eta <= 1:
        raise DomainError(f"eta must lie in (0, 1], got {eta}")
    lo, hi = 0.0, 1.0
    while _max_ratio(alpha, hi, m_max)[0] > eta:
        lo, hi = hi, 2 * hi
        if hi > m_max:
            worst, wm, wj = _max_ratio(alpha, lo, m_max)
            return DilationSweep(alpha, eta, None, worst, wm, wj, m_max)
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if _max_ratio(alpha, mid, m_max)[0] <= eta:
            hi = mid
        else:
            lo = mid
    worst, wm, wj = _max_ratio(alpha, hi, m_max)
    logger.debug("a(eta=%g, alpha=%g) = %.4f (max ratio %.3g at m=%d, j=%d)", eta, alpha, hi, worst, wm, wj)
    return DilationSweep(alpha, eta, hi, worst, wm, wj, m_max)


def neg_binomial_coeff(alpha: float, n: int) -> float:
    """binom(-α, n) = (-1)^n Γ(n+α) / (Γ(α) n!)."""
    alpha = _require_positive(alpha, "alpha")
    log_abs = float(special.gammaln(n + alpha) - special.gammaln(alpha) - special.gammaln(n + 1))
    return (-1) ** n * math.exp(log_abs)


def neg_binomial_asymptotic(alpha: float, n: int) -> float:
    """(-1)^n / (Γ(α) n^{1-α})."""
    alpha = _require_positive(alpha, "alpha")
    return (-1) ** n / (math.gamma(alpha) * n ** (1 - alpha))
