"""
Lemma Suite Validator

Sweep verification of the special-function, local-norm, frame and weight
lemmas behind the divisor conditions. Every property is one `_check_*`
method returning the list of failed assertions together with the empirical
constants it measured; codes and meanings are registered in SUITE_SPEC.md.

Existence statements ("there is ε > 0", "there is a(η)") are made testable
by fixing the sweep ranges in SweepConfig and reporting the empirical
extremum; the suite never treats those constants as known in advance.
"""

from __future__ import annotations

import cmath
import logging
import math
import time
import warnings
from dataclasses import asdict, dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, special

from ..core.divisor import (
    Divisor,
    DivisorPoint,
    PSpace,
    boundary_gap,
    compare_radius_shift,
    gap_actual,
    gap_lower_bound,
    inf_gap_lower_bound,
    interpolation_margin,
)
from ..core.errors import BergmanError, DegreeError, DomainError
from ..core.hypgeo import DiskPoint, mobius, rho
from ..core.io import divisor_from_fixture, load_fixture
from ..core.model import (
    GRAM_TAIL_BOUND,
    SampleIndex,
    TruncatedFunction,
    basis_vector,
    bessel_sum,
    build_gram,
    evaluate,
    frame_bounds,
    interpolate,
    local_coeff_control_check,
    local_control_p2,
    local_norm_quadrature,
    local_norm_sq,
    monomial,
    suggest_out_degree,
    sup_norm_inf,
    translate,
)
from ..core.specfun import (
    BetaParams,
    basis_log_weights,
    beta,
    dilation_ratios,
    find_a_eta,
    gamma_quantile_bound,
    gautschi_check,
    kernel_tail_F,
    kernel_tail_F_array,
    kernel_tail_R,
    local_energy_floor,
    local_energy_uniform_eps,
    log_gamma,
    neg_binomial_asymptotic,
    neg_binomial_coeff,
    ratio_bound,
    reg_inc_beta,
    reg_inc_beta_array,
    stirling_ratio,
    vartheta,
    vartheta_gap,
    vartheta_gap_limit,
    vartheta_minimizer,
)
from ..core.weights import (
    K_constant,
    K_quadrature,
    WeightMode,
    WeightParams,
    cutoff_gradient_bound,
    dbar_ingredient_bounds,
    inner_radius,
    invariant_laplacian_fd,
    jensen_budget,
    mass_check,
    ohsawa_curvature_floor,
    ohsawa_weight,
    outer_radius,
    patch_branches,
    patch_radial_slopes,
    patch_region,
    patch_v,
    radial_weight_laplacian,
    weight_laplacian_lower_bound,
    weight_profile,
    weight_w,
    xi_mass,
)

logger = logging.getLogger(__name__)

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"
JENSEN_FIXTURE = FIXTURE_DIR / "jensen_fixture.json"

# Tolerances
ORACLE_ABS_TOL = 1e-12
LOG_GAMMA_TOL = 1e-13
BETA_REL_TOL = 1e-12
SYMMETRY_TOL = 1e-12
TREND_SLACK = 1e-9
TREND_FINAL_TOL = 1e-3
LOCAL_ENERGY_MIN = 1e-6
STABILITY_TOL = 0.10
KERNEL_DIRECT_TOL = 1e-10
PARSEVAL_REL_TOL = 1e-8
ISOMETRY_TOL = 1e-8
TRANSLATION_TAIL_TOL = 1e-10
CLOSED_FORM_REL_TOL = 1e-8
FRAME_TOL = 1e-10
BESSEL_DECAY = 10.0
INTERP_RESIDUAL_TOL = 1e-8
INTERP_NORM_DRIFT = 0.01
MERGE_BLOWUP = 100.0
K_TOL = 1e-10
XI_MASS_TOL = 1e-9
CONTINUITY_TOL = 1e-10
SLOPE_REL_TOL = 1e-6
SLOPE_STEP = 1e-6
LAPLACIAN_TOL = 1e-4
MASS_REL_TOL = 1e-12
MASS_QUAD_TOL = 1e-7
WEIGHT_FD_REL_TOL = 1e-3
JENSEN_TARGET = 0.45
VARTHETA_TOL = 1e-3
VARTHETA_M = 10 ** 6
BOUND_SLACK = 1e-12
MAX_MESSAGES = 3
DEGREE_RETRIES = 8

# Sweep families
TREND_N = (10, 30, 100, 300, 1000, 3000, 10_000, 30_000, 100_000)
NEG_BINOMIAL_ALPHAS = (0.5, 1.5, 3.0)
GAUTSCHI_X = np.logspace(-2, 4, 61)
GAUTSCHI_S = np.arange(1, 10) / 10
KERNEL_T_FRACTIONS = np.linspace(0.0, 0.999, 17)
KERNEL_DIRECT_M = (1, 2, 5, 10, 20, 50, 100, 200, 500)
TRANSLATION_ALPHAS = (0.0, 1.0)
TRANSLATION_MODULI = (0.1, 0.4, 0.7)
CLOSED_FORM_LAMBDA = 0.3
CLOSED_FORM_Z = -0.5
CLOSED_FORM_J_MAX = 30
FRAME_SINGLE_DEGREE = 20
BESSEL_WITNESSES = (0.8, 0.9, 0.95, 0.99, 0.995, 0.999)
BESSEL_DEGREE = 60
ROTATION_ANGLE = 0.7
MERGE_SEPARATIONS = (0.5, 0.1, 0.01)
INTERP_DEGREE_STEP = 10
K_MULTIPLICITIES = (1, 2, 5, 20, 100)
K_EDGE_OFFSETS = (1e-6, 1e-3, 1e-2)
PATCH_CENTER = 0.4
PATCH_MULTIPLICITIES = (1, 3, 10)
PATCH_CONTINUITY_ANGLES = 360
PATCH_LAPLACIAN_ANGLES = 8
SLOPE_MULTIPLICITIES = (1, 5, 20, 100)
W_CENTER = 0.3
W_MULTIPLICITIES = (1, 4, 16)
W_RADIAL = 20
W_ANGLES = 17
W_MIN_SAMPLES = 1000
SUP_NORM_M = (1, 5, 20)
SUP_NORM_ALPHAS = (1.0, 2.0)
VARTHETA_PAIRS = ((1.0, 10.0), (0.5, 5.0))
SHIFT_ALPHAS = (0.5, 1.0, 2.0)
SHIFT_EPSILONS = (0.1, 0.5, 1.0)
DBAR_POINTS = 8
GAP_FRACTIONS = (0.25, 0.5, 0.9)


class Verdict(Enum):
    PASS = "pass"
    FAIL = "fail"


def _json_safe(value: Any) -> Any:
    """Numpy scalars to Python, non-finite floats to None, complex to {re, im}."""
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, complex):
        return {"re": _json_safe(value.real), "im": _json_safe(value.imag)}
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


@dataclass
class PropertyResult:
    code: str
    name: str
    verdict: Verdict
    message: str
    constants: Dict[str, Any] = field(default_factory=dict)
    elapsed_s: float = 0.0

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def to_dict(self) -> Dict[str, Any]:
        # elapsed time stays out of the report so reruns are byte-identical
        return {
            "code": self.code,
            "name": self.name,
            "verdict": self.verdict.value,
            "message": self.message,
            "constants": _json_safe(self.constants),
        }


@dataclass
class SuiteResult:
    passed: bool
    score: int
    results: List[PropertyResult] = field(default_factory=list)
    config: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "score": self.score,
            "config": _json_safe(self.config),
            "results": [r.to_dict() for r in self.results],
        }


@dataclass(frozen=True)
class SweepConfig:
    """Sweep ranges; default() is the full acceptance sweep, quick() caps every m at 20."""

    alphas: Tuple[float, ...] = (-0.5, 0.0, 1.0, 2.0)
    cs: Tuple[float, ...] = (1.0, 2.0, 5.0)
    m_max: int = 300
    kernel_alphas: Tuple[float, ...] = (0.0, 1.0)
    kernel_m_max: int = 500
    dilation_alphas: Tuple[float, ...] = (-0.5, 1.0)
    dilation_m_max: int = 500
    eta: float = 0.1
    oracle_samples: int = 500
    parseval_samples: int = 20
    translation_degree: int = 40
    jensen_radii: Tuple[float, ...] = (0.9, 0.95, 0.99, 0.995)
    weight_alpha: float = 1.0
    weight_constant: float = 1.5
    epsilon: float = 0.5
    seed: int = 20240517

    def __post_init__(self) -> None:
        for name in ("alphas", "kernel_alphas", "dilation_alphas"):
            values = getattr(self, name)
            if not values or any(not a > -1 for a in values):
                raise DomainError(f"{name} must be a non-empty tuple of values > -1, got {values}")
        if not self.cs or any(not c > 0 for c in self.cs):
            raise DomainError(f"cs must be positive, got {self.cs}")
        for name in ("m_max", "kernel_m_max", "dilation_m_max"):
            if getattr(self, name) < 2:
                raise DomainError(f"{name} must be at least 2")
        if not 0 < self.eta <= 1:
            raise DomainError(f"eta must lie in (0, 1], got {self.eta}")
        if self.oracle_samples < 1 or self.parseval_samples < 1 or self.translation_degree < 1:
            raise DomainError("sample counts and the translation degree must be positive")
        if not self.jensen_radii or any(not 0.9 <= r < 1 for r in self.jensen_radii):
            raise DomainError(f"jensen radii must lie in [0.9, 1), got {self.jensen_radii}")
        if not self.epsilon > 0:
            raise DomainError(f"epsilon must be positive, got {self.epsilon}")

    @classmethod
    def default(cls) -> "SweepConfig":
        return cls()

    @classmethod
    def quick(cls) -> "SweepConfig":
        return replace(
            cls(),
            m_max=20,
            kernel_m_max=20,
            dilation_m_max=20,
            oracle_samples=100,
            parseval_samples=5,
            translation_degree=20,
            jensen_radii=(0.9, 0.95),
        )

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


Findings = Tuple[List[str], Dict[str, Any]]

# (code, name, method)
PROPERTIES: Tuple[Tuple[str, str, str], ...] = (
    ("L001", "inc_beta_oracle", "_check_inc_beta_oracle"),
    ("L002", "inc_beta_symmetry", "_check_inc_beta_symmetry"),
    ("L003", "stirling_trend", "_check_stirling_trend"),
    ("L004", "gautschi_grid", "_check_gautschi_grid"),
    ("L005", "local_energy_minimum", "_check_local_energy"),
    ("L006", "kernel_tail", "_check_kernel_tail"),
    ("L007", "dilation_ratio", "_check_dilation_ratio"),
    ("L008", "local_parseval", "_check_local_parseval"),
    ("L009", "translation", "_check_translation"),
    ("L010", "frame_bessel", "_check_frame_bessel"),
    ("L011", "interpolation", "_check_interpolation"),
    ("L012", "weight_machinery", "_check_weights"),
    ("L013", "jensen_budget", "_check_jensen_budget"),
    ("L014", "growth_space_radii", "_check_growth_space"),
    ("L015", "radius_shift", "_check_radius_shift"),
    ("L016", "dbar_ingredients", "_check_dbar_ingredients"),
    ("L017", "gap_estimates", "_check_gap_estimates"),
)


def _cis(theta: float) -> complex:
    return cmath.exp(1j * theta)


def _angles(n: int) -> np.ndarray:
    return 2 * np.pi * (np.arange(n) + 0.25) / n


def _lower_beta_integral(x: float, a: float, b: float) -> float:
    if x <= 0:
        return 0.0
    value, _ = integrate.quad(
        lambda t: (1.0 - t) ** (b - 1.0), 0.0, x, weight="alg", wvar=(a - 1.0, 0.0),
        epsabs=0.0, epsrel=1e-13, limit=200,
    )
    return value / math.exp(float(special.betaln(a, b)))


def _inc_beta_quadrature(x: float, a: float, b: float) -> float:
    """Oracle: ∫_0^x t^{a-1}(1-t)^{b-1} dt / β(a, b) with the algebraic-weight rule, reflected past 1/2."""
    if x <= 0.5:
        return _lower_beta_integral(x, a, b)
    return 1.0 - _lower_beta_integral(1.0 - x, b, a)


def _running_change(per_m: np.ndarray) -> Tuple[float, float]:
    """(final running minimum, relative change of the running minimum over the last decade of m)."""
    running = np.minimum.accumulate(per_m)
    final = float(running[-1])
    ref = float(running[max(0, running.size - max(1, running.size // 10) - 1)])
    if ref <= 0:
        return final, math.inf
    return final, (ref - final) / ref


def _non_increasing(values: Sequence[float], slack: float) -> bool:
    return all(b <= a + slack for a, b in zip(values, values[1:]))


def _fit_degree(d: Divisor, degree: int) -> int:
    """Smallest degree reached from `degree` by following DegreeError suggestions."""
    for _ in range(DEGREE_RETRIES):
        try:
            build_gram(d, degree)
            return degree
        except DegreeError as exc:
            degree = exc.suggested_degree
    build_gram(d, degree)
    return degree


def _random_function(rng: np.random.Generator, alpha: float, degree: int) -> TruncatedFunction:
    coeffs = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
    return TruncatedFunction(alpha, coeffs / np.linalg.norm(coeffs))


class LemmaSuite:
    """Runs the registered properties over a SweepConfig."""

    def __init__(self, config: Optional[SweepConfig] = None, codes: Optional[Sequence[str]] = None) -> None:
        self.config = config or SweepConfig.default()
        known = [code for code, _, _ in PROPERTIES]
        unknown = sorted(set(codes or ()) - set(known))
        if unknown:
            raise DomainError(f"unknown property codes: {', '.join(unknown)}")
        self.codes = list(codes) if codes else known

        cfg = self.config
        # ConstraintError surfaces here, before any sweep runs
        self.params_p2 = WeightParams(cfg.weight_alpha, cfg.weight_constant, WeightMode.DBAR_P2)
        self.params_pinf: Optional[WeightParams] = None
        if cfg.weight_alpha > 0:
            c_inf = cfg.weight_constant * cfg.weight_alpha / (cfg.weight_alpha + 1)
            self.params_pinf = WeightParams(cfg.weight_alpha, c_inf, WeightMode.DBAR_PINF)
        self.params_unique = WeightParams(cfg.weight_alpha, cfg.epsilon, WeightMode.UNIQUENESS_EPS)

    def run(self) -> SuiteResult:
        results: List[PropertyResult] = []
        for k, (code, name, method) in enumerate(PROPERTIES):
            if code not in self.codes:
                continue
            rng = np.random.default_rng([self.config.seed, k])
            start = time.perf_counter()
            try:
                failures, constants = getattr(self, method)(rng)
            except (BergmanError, ArithmeticError, np.linalg.LinAlgError) as exc:
                failures, constants = [f"error: {exc}"], {}
            elapsed = time.perf_counter() - start
            if failures:
                extra = len(failures) - MAX_MESSAGES
                message = "; ".join(failures[:MAX_MESSAGES]) + (f" (+{extra} more)" if extra > 0 else "")
                verdict = Verdict.FAIL
            else:
                message = "all cases within tolerance"
                verdict = Verdict.PASS
            logger.debug("%s %s: %s in %.2fs", code, name, verdict.value, elapsed)
            results.append(PropertyResult(code, name, verdict, message, constants, elapsed))

        failed = sum(1 for r in results if not r.passed)
        score = 100 if failed == 0 else max(0, 50 - failed * 10)
        return SuiteResult(failed == 0, score, results, self.config.to_dict())

    # ------------------------------------------------------------------
    # Special functions
    # ------------------------------------------------------------------

    def _check_inc_beta_oracle(self, rng: np.random.Generator) -> Findings:
        n = self.config.oracle_samples
        a = 50.0 * (1.0 - rng.random(n))
        b = 50.0 * (1.0 - rng.random(n))
        x = rng.random(n)
        failures: List[str] = []

        worst, worst_at = 0.0, None
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            for ai, bi, xv in zip(a.tolist(), b.tolist(), x.tolist()):
                err = abs(reg_inc_beta(xv, BetaParams(ai, bi)) - _inc_beta_quadrature(xv, ai, bi))
                if err > worst:
                    worst, worst_at = err, (xv, ai, bi)
        if worst > ORACLE_ABS_TOL:
            failures.append(f"I(x;a,b) deviates from quadrature by {worst:.3e} at (x,a,b)={worst_at}")

        lg_worst = 0.0
        for v in np.logspace(-3, 6, 46).tolist():
            ref = math.lgamma(v)
            lg_worst = max(lg_worst, abs(log_gamma(v) - ref) / max(1.0, abs(ref)))
        if lg_worst > LOG_GAMMA_TOL:
            failures.append(f"ln Gamma deviates by {lg_worst:.3e}")

        pa = 0.1 + 19.9 * rng.random(50)
        pb = 0.1 + 19.9 * rng.random(50)
        beta_worst = max(
            abs(beta(BetaParams(u, v)) / float(special.beta(u, v)) - 1.0) for u, v in zip(pa.tolist(), pb.tolist())
        )
        if beta_worst > BETA_REL_TOL:
            failures.append(f"beta relative error {beta_worst:.3e}")
        return failures, {"inc_beta_abs_err": worst, "log_gamma_err": lg_worst, "beta_rel_err": beta_worst}

    def _check_inc_beta_symmetry(self, rng: np.random.Generator) -> Findings:
        n = self.config.oracle_samples
        a = 50.0 * (1.0 - rng.random(n))
        b = 50.0 * (1.0 - rng.random(n))
        x = rng.random(n)
        failures: List[str] = []
        defect = float(np.max(np.abs(reg_inc_beta_array(x, a, b) + reg_inc_beta_array(1.0 - x, b, a) - 1.0)))
        if defect > SYMMETRY_TOL:
            failures.append(f"I(x;a,b) + I(1-x;b,a) - 1 reaches {defect:.3e}")

        grid = np.linspace(0.0, 1.0, 101)
        worst_drop = 0.0
        for ai, bi in zip(a[:20].tolist(), b[:20].tolist()):
            worst_drop = max(worst_drop, float(-np.diff(reg_inc_beta_array(grid, ai, bi)).min()))
        if worst_drop > SYMMETRY_TOL:
            failures.append(f"I(x;a,b) decreases by {worst_drop:.3e} on the x grid")
        return failures, {"symmetry_defect": defect, "monotone_drop": max(worst_drop, 0.0)}

    def _check_stirling_trend(self, rng: np.random.Generator) -> Findings:
        failures: List[str] = []
        constants: Dict[str, Any] = {}
        for alpha in self.config.alphas:
            dev = [abs(stirling_ratio(n, alpha) - 1.0) for n in TREND_N]
            constants[f"stirling alpha={alpha:g}"] = dev[-1]
            if not _non_increasing(dev, TREND_SLACK):
                failures.append(f"Stirling deviation not decreasing for alpha={alpha:g}")
            if dev[-1] >= TREND_FINAL_TOL:
                failures.append(f"Stirling deviation {dev[-1]:.3e} at n={TREND_N[-1]} for alpha={alpha:g}")
        for alpha in NEG_BINOMIAL_ALPHAS:
            dev = [abs(neg_binomial_coeff(alpha, n) / neg_binomial_asymptotic(alpha, n) - 1.0) for n in TREND_N]
            constants[f"neg_binomial alpha={alpha:g}"] = dev[-1]
            if not _non_increasing(dev, TREND_SLACK) or dev[-1] >= TREND_FINAL_TOL:
                failures.append(f"binom(-alpha, n) asymptotic not reached for alpha={alpha:g}")
        return failures, constants

    def _check_gautschi_grid(self, rng: np.random.Generator) -> Findings:
        bad = [(x, s) for x in GAUTSCHI_X.tolist() for s in GAUTSCHI_S.tolist() if not gautschi_check(x, s)]
        failures = [f"Gautschi inequality fails at {len(bad)} grid points, first (x,s)={bad[0]}"] if bad else []
        return failures, {"grid_points": GAUTSCHI_X.size * GAUTSCHI_S.size, "violations": len(bad)}

    # ------------------------------------------------------------------
    # Incomplete-beta lemmas
    # ------------------------------------------------------------------

    def _check_local_energy(self, rng: np.random.Generator) -> Findings:
        """min over 1 <= n < m <= m_max of I((m-c)/(m+α+1); n+1, α+1), per (α, c)."""
        cfg = self.config
        failures: List[str] = []
        constants: Dict[str, Any] = {}
        n_all = np.arange(1, cfg.m_max, dtype=float)
        for alpha in cfg.alphas:
            for c in cfg.cs:
                key = f"alpha={alpha:g},c={c:g}"
                m = np.arange(math.floor(c) + 1, cfg.m_max + 1, dtype=float)
                m = m[m >= 2]
                if m.size == 0:
                    continue
                mm, nn = np.meshgrid(m, n_all, indexing="ij")
                x = (mm - c) / (mm + alpha + 1)
                vals = np.where(nn < mm, reg_inc_beta_array(x, nn + 1, alpha + 1), np.inf)
                per_m = vals.min(axis=1)
                eps, change = _running_change(per_m)
                i, j = np.unravel_index(int(np.argmin(vals)), vals.shape)
                entry: Dict[str, Any] = {"epsilon": eps, "argmin_m": int(mm[i, j]), "argmin_n": int(nn[i, j]),
                                         "last_decade_change": change}
                if eps < LOCAL_ENERGY_MIN:
                    failures.append(f"{key}: minimum {eps:.3e} below {LOCAL_ENERGY_MIN:g}")
                if change > STABILITY_TOL:
                    failures.append(f"{key}: running minimum still moving ({change:.1%})")

                col_min = vals.min(axis=0)
                for n in range(math.floor(c) + 1, cfg.m_max):
                    floor = local_energy_floor(alpha, c, n)
                    if math.isfinite(col_min[n - 1]) and col_min[n - 1] < floor * (1 - 1e-9):
                        failures.append(f"{key}: proof floor {floor:.3e} exceeds the sweep at n={n}")
                        break
                uniform = local_energy_uniform_eps(alpha, c)
                entry["uniform_epsilon"] = uniform
                if uniform is not None and uniform > eps:
                    failures.append(f"{key}: uniform constant {uniform:.3e} exceeds the sweep minimum")
                constants[key] = entry
        return failures, constants

    def _check_kernel_tail(self, rng: np.random.Generator) -> Findings:
        """F_{m,α}(t) on t ≤ 0.999·r_m, cross-checked against direct summation and F + R = 1."""
        cfg = self.config
        failures: List[str] = []
        constants: Dict[str, Any] = {}
        ms = np.arange(1, cfg.kernel_m_max + 1, dtype=float)
        for alpha in cfg.kernel_alphas:
            key = f"alpha={alpha:g}"
            r_m = np.sqrt(ms / (ms + alpha + 1))
            t = r_m[:, None] * KERNEL_T_FRACTIONS[None, :]
            vals = kernel_tail_F_array(ms[:, None], alpha, t)
            eps, change = _running_change(vals.min(axis=1))
            _, eps_bound = gamma_quantile_bound(alpha)
            constants[key] = {"epsilon": eps, "last_decade_change": change, "proof_epsilon": eps_bound}
            if not eps > 0:
                failures.append(f"{key}: kernel tail minimum is not positive")
            if change > STABILITY_TOL:
                failures.append(f"{key}: kernel tail minimum still moving ({change:.1%})")
            if eps < eps_bound:
                failures.append(f"{key}: sweep minimum {eps:.4g} below the quantile bound {eps_bound:.4g}")

            direct_err, sum_err = 0.0, 0.0
            for m in (m for m in KERNEL_DIRECT_M if m <= cfg.kernel_m_max):
                for k, tv in enumerate(t[m - 1].tolist()):
                    f_direct = kernel_tail_F(m, alpha, tv)
                    direct_err = max(direct_err, abs(f_direct - vals[m - 1, k]))
                    sum_err = max(sum_err, abs(f_direct + kernel_tail_R(m, alpha, tv) - 1.0))
            constants[key].update({"direct_err": direct_err, "complement_err": sum_err})
            if direct_err > KERNEL_DIRECT_TOL:
                failures.append(f"{key}: direct sum differs from I(1-t²; α+2, m) by {direct_err:.3e}")
            if sum_err > SYMMETRY_TOL:
                failures.append(f"{key}: F + R - 1 reaches {sum_err:.3e}")
        return failures, constants

    def _check_dilation_ratio(self, rng: np.random.Generator) -> Findings:
        cfg = self.config
        failures: List[str] = []
        constants: Dict[str, Any] = {}
        for alpha in cfg.dilation_alphas:
            key = f"alpha={alpha:g}"
            sweep = find_a_eta(alpha, cfg.eta, m_max=cfg.dilation_m_max)
            constants[key] = sweep.to_dict()
            if sweep.a is None:
                failures.append(f"{key}: no a(eta={cfg.eta:g}) below m_max={cfg.dilation_m_max}")
                continue
            if sweep.max_ratio > cfg.eta:
                failures.append(f"{key}: ratio {sweep.max_ratio:.4g} exceeds eta at a={sweep.a:.3f}")
            if alpha > 0:
                _, _, ratio = dilation_ratios(alpha, sweep.a, cfg.dilation_m_max)
                bound = ratio_bound(alpha, sweep.a)
                measured = float(np.nanmax(ratio))
                constants[key]["explicit_bound"] = bound
                if measured > bound * (1 + BOUND_SLACK):
                    failures.append(f"{key}: explicit bound {bound:.4g} below measured ratio {measured:.4g}")
        return failures, constants

    # ------------------------------------------------------------------
    # Truncated model
    # ------------------------------------------------------------------

    def _check_local_parseval(self, rng: np.random.Generator) -> Findings:
        cfg = self.config
        failures: List[str] = []
        quad_worst, mono_drop = 0.0, 0.0
        radii = np.linspace(0.01, 0.99, 100)
        for _ in range(cfg.parseval_samples):
            alpha = float(rng.uniform(-0.5, 3.0))
            f = _random_function(rng, alpha, int(rng.integers(0, 9)))
            r = float(rng.uniform(0.1, 0.95))
            series = local_norm_sq(f, r)
            quad = local_norm_quadrature(f, r)
            quad_worst = max(quad_worst, abs(series - quad) / series)
            values = np.array([local_norm_sq(f, float(t)) for t in radii])
            mono_drop = max(mono_drop, float(-np.diff(values).min()))
        if quad_worst > PARSEVAL_REL_TOL:
            failures.append(f"series and quadrature local norms differ by {quad_worst:.3e}")
        if mono_drop > 1e-14:
            failures.append(f"local norm decreases in r by {mono_drop:.3e}")

        control_worst = 0.0
        for _ in range(3):
            alpha = float(rng.uniform(-0.5, 2.0))
            f = _random_function(rng, alpha, int(rng.integers(0, 9)))
            lam = 0.6 * math.sqrt(float(rng.random())) * _cis(2 * math.pi * float(rng.random()))
            for m in (2, 3, 5):
                res = local_coeff_control_check(f, lam, m, 1.0)
                bound = 1.0 / reg_inc_beta(res.radius ** 2, BetaParams(m, alpha + 1))
                control_worst = max(control_worst, res.ratio / bound)
        if control_worst > 1 + 1e-10:
            failures.append(f"local coefficient ratio exceeds 1/I(r²; m, α+1) by factor {control_worst:.6g}")

        p2_results = []
        for m in (10, 20):
            coeffs = rng.standard_normal(m + 11) + 1j * rng.standard_normal(m + 11)
            coeffs[:m] *= 1e-3
            f = TruncatedFunction(1.0, coeffs)
            crit = local_norm_sq(f, math.sqrt(m / (m + 2.0)))
            f = TruncatedFunction(1.0, coeffs / math.sqrt(crit) * (1 - 1e-9))
            res = local_control_p2(f, m, 0.2, m_max=cfg.dilation_m_max)
            p2_results.append(res.to_dict())
            if not (res.applicable and res.hypothesis and res.holds):
                failures.append(f"local control at m={m}: applicable={res.applicable}, "
                                f"hypothesis={res.hypothesis}, holds={res.holds}")
        return failures, {"quadrature_rel_err": quad_worst, "monotone_drop": max(mono_drop, 0.0),
                          "control_ratio_over_bound": control_worst, "local_control": p2_results}

    def _check_translation(self, rng: np.random.Generator) -> Findings:
        cfg = self.config
        failures: List[str] = []
        iso_worst, inv_worst = 0.0, 0.0
        for alpha in TRANSLATION_ALPHAS:
            for modulus in TRANSLATION_MODULI:
                lam = modulus * _cis(2 * math.pi * float(rng.random()))
                f = _random_function(rng, alpha, cfg.translation_degree)
                n_out = suggest_out_degree(f.degree, lam, alpha, TRANSLATION_TAIL_TOL)
                res = translate(f, lam, n_out)
                defect = f.norm_sq() - res.function.norm_sq()
                iso_worst = max(iso_worst, abs(defect))
                if abs(defect) >= ISOMETRY_TOL:
                    failures.append(f"isometry defect {defect:.3e} at |λ|={modulus}, alpha={alpha:g}, N={n_out}")
                back = translate(res.function, lam, n_out).function
                err_sq = float(np.sum(np.abs(back.coeffs - f.padded(n_out).coeffs) ** 2))
                inv_worst = max(inv_worst, err_sq)
                if err_sq > 2 * res.tail_energy + 1e-18:
                    failures.append(f"involution error {err_sq:.3e} above twice the tail {res.tail_energy:.3e}")

        cf_worst = 0.0
        a = rho(CLOSED_FORM_LAMBDA, CLOSED_FORM_Z)
        for alpha in TRANSLATION_ALPHAS:
            s = alpha + 2
            for j in range(CLOSED_FORM_J_MAX + 1):
                n_out = suggest_out_degree(j, CLOSED_FORM_LAMBDA, alpha, 1e-16)
                g = translate(basis_vector(alpha, j), CLOSED_FORM_LAMBDA, n_out).function
                measured = (1 - abs(CLOSED_FORM_Z) ** 2) ** s * abs(evaluate(g, CLOSED_FORM_Z)) ** 2
                expected = math.exp(float(basis_log_weights(alpha, j))) * (1 - a * a) ** s * a ** (2 * j)
                cf_worst = max(cf_worst, abs(measured - expected) / expected)
        if cf_worst > CLOSED_FORM_REL_TOL:
            failures.append(f"|<T_z 1, T_λ e_j>|² differs from its closed form by {cf_worst:.3e}")
        return failures, {"isometry_defect": iso_worst, "involution_err_sq": inv_worst, "closed_form_rel_err": cf_worst}

    def _check_frame_bessel(self, rng: np.random.Generator) -> Findings:
        failures: List[str] = []
        constants: Dict[str, Any] = {}
        for alpha in TRANSLATION_ALPHAS:
            single = Divisor(alpha, PSpace.TWO, (DivisorPoint(DiskPoint(0.0), FRAME_SINGLE_DEGREE + 1),))
            fb = frame_bounds(build_gram(single, FRAME_SINGLE_DEGREE))
            constants[f"single alpha={alpha:g}"] = fb.to_dict()
            if abs(fb.lower - 1) > FRAME_TOL or abs(fb.upper - 1) > FRAME_TOL:
                failures.append(f"full-multiplicity point gives frame bounds ({fb.lower:.12g}, {fb.upper:.12g})")

        gap = Divisor(1.0, PSpace.TWO, (
            DivisorPoint(DiskPoint(0.0), 3),
            DivisorPoint(DiskPoint(0.3), 2),
            DivisorPoint(DiskPoint(-0.3j), 2),
        ))
        sums = [bessel_sum(gap, z) for z in BESSEL_WITNESSES]
        constants["bessel_sums"] = sums
        if not all(b < a for a, b in zip(sums, sums[1:])):
            failures.append("Bessel sums along the witnesses are not strictly decreasing")
        if sums[0] < BESSEL_DECAY * sums[-1]:
            failures.append(f"Bessel sum drops only by {sums[0] / sums[-1]:.3g}x")

        g = build_gram(gap, BESSEL_DEGREE)
        probe = translate(basis_vector(1.0, 0), 0.5, BESSEL_DEGREE).function
        via_map = float(np.sum(np.abs(g.analysis_map @ probe.coeffs) ** 2))
        closed = bessel_sum(gap, 0.5)
        bessel_err = abs(via_map - closed) / closed
        constants["bessel_rel_err"] = bessel_err
        if bessel_err > PARSEVAL_REL_TOL:
            failures.append(f"closed-form Bessel sum differs from the analysis map by {bessel_err:.3e}")

        upper = frame_bounds(g).upper
        rotated = frame_bounds(build_gram(gap.rotated(ROTATION_ANGLE), BESSEL_DEGREE)).upper
        constants["upper_frame_bound"] = upper
        if abs(upper - rotated) > FRAME_TOL * max(1.0, upper):
            failures.append(f"upper frame bound changes under rotation: {upper!r} vs {rotated!r}")
        return failures, constants

    def _check_interpolation(self, rng: np.random.Generator) -> Findings:
        failures: List[str] = []
        d = Divisor(1.0, PSpace.TWO, (
            DivisorPoint(DiskPoint(0.0), 3),
            DivisorPoint(DiskPoint(0.6), 2),
            DivisorPoint(DiskPoint(-0.6), 1),
            DivisorPoint(DiskPoint(0.6j), 2),
            DivisorPoint(DiskPoint(-0.6j), 3),
        ))
        start = max(suggest_out_degree(pt.m - 1, pt.lam, d.alpha, GRAM_TAIL_BOUND) for pt in d.points)
        degree = _fit_degree(d, start)
        targets = {
            SampleIndex(pt.lam, j): _cis(2 * math.pi * float(rng.random()))
            for pt in d.points for j in range(pt.m)
        }
        first = interpolate(d, targets, degree)
        second = interpolate(d, targets, _fit_degree(d, degree + INTERP_DEGREE_STEP))
        drift = abs(second.norm - first.norm) / first.norm
        residual = max(first.residual, second.residual)
        if residual >= INTERP_RESIDUAL_TOL:
            failures.append(f"interpolation residual {residual:.3e}")
        if drift >= INTERP_NORM_DRIFT:
            failures.append(f"solution norm drifts {drift:.2%} from N={degree} to N+{INTERP_DEGREE_STEP}")

        norms = []
        for t in MERGE_SEPARATIONS:
            pair = Divisor(1.0, PSpace.TWO, (DivisorPoint(DiskPoint(0.0), 2), DivisorPoint(DiskPoint(t), 2)))
            jets = {
                SampleIndex(DiskPoint(0.0), 0): 1.0, SampleIndex(DiskPoint(0.0), 1): 0.0,
                SampleIndex(DiskPoint(t), 0): -1.0, SampleIndex(DiskPoint(t), 1): 0.0,
            }
            deg = _fit_degree(pair, suggest_out_degree(1, t, 1.0, GRAM_TAIL_BOUND))
            res = interpolate(pair, jets, deg)
            if res.residual >= INTERP_RESIDUAL_TOL:
                failures.append(f"merging pair at ρ={t:g} leaves residual {res.residual:.3e}")
            norms.append(res.norm)
        blowup = norms[-1] / norms[0]
        if blowup < MERGE_BLOWUP:
            failures.append(f"merging points raise the minimum norm only {blowup:.3g}x")
        return failures, {"degree": degree, "residual": residual, "norm_drift": drift,
                          "merge_norms": norms, "merge_blowup": blowup}

    # ------------------------------------------------------------------
    # Weights
    # ------------------------------------------------------------------

    def _check_weights(self, rng: np.random.Generator) -> Findings:
        cfg = self.config
        p2, pu = self.params_p2, self.params_unique
        failures: List[str] = []
        constants: Dict[str, Any] = {}

        k_err = max(
            abs(K_constant(m, p2.constant, p2.alpha, p2.mode) - K_quadrature(m, p2.constant, p2.alpha, p2.mode))
            / max(1.0, K_constant(m, p2.constant, p2.alpha, p2.mode))
            for m in K_MULTIPLICITIES
        )
        constants["K_rel_err"] = k_err
        if k_err > K_TOL:
            failures.append(f"closed-form K differs from quadrature by {k_err:.3e}")

        k_min = math.inf
        for alpha in cfg.alphas:
            edge = (alpha + 1) * (1 - math.exp(-1))
            for delta in K_EDGE_OFFSETS:
                c = edge * (1 + delta)
                k_min = min(k_min, min(K_constant(m, c, alpha, WeightMode.DBAR_P2) for m in range(1, cfg.m_max + 1)))
        constants["K_min_near_edge"] = k_min
        if not k_min > 1:
            failures.append(f"K = {k_min:.6g} <= 1 just above the window edge")

        mass_err = max(abs(xi_mass(weight_profile(PATCH_CENTER, m, p2)) - 1.0) for m in PATCH_MULTIPLICITIES)
        constants["xi_mass_err"] = mass_err
        if mass_err > XI_MASS_TOL:
            failures.append(f"∫ξ dν deviates from 1 by {mass_err:.3e}")

        failures.extend(self._patch_findings(pu, constants))
        for params in (p2, self.params_pinf):
            if params is not None:
                failures.extend(self._weight_w_findings(params, constants))
        return failures, constants

    def _patch_findings(self, pu: WeightParams, constants: Dict[str, Any]) -> List[str]:
        failures: List[str] = []
        e = pu.exponent
        jump, slope_err, lap_err = 0.0, 0.0, 0.0
        boundary_samples = 0
        for m in PATCH_MULTIPLICITIES:
            r = inner_radius(m, pu)
            region = patch_region(PATCH_CENTER, m, pu)
            for theta in _angles(PATCH_CONTINUITY_ANGLES).tolist():
                inside, outside = patch_branches(mobius(PATCH_CENTER, r * _cis(theta)), PATCH_CENTER, m, pu)
                jump = max(jump, abs(inside - outside))
                boundary_samples += 1
            for theta in _angles(PATCH_LAPLACIAN_ANGLES).tolist():
                for a, target in ((0.5 * r, 2 * e), (r + 0.5 * (1 - r), 0.0)):
                    z = mobius(PATCH_CENTER, a * _cis(theta))
                    est = invariant_laplacian_fd(lambda w: patch_v(w, PATCH_CENTER, m, pu), z, region=region)
                    if not est.valid:
                        failures.append(f"patch Laplacian stencil invalid at {z}")
                        continue
                    lap_err = max(lap_err, abs(est.value - target))
            mc = mass_check(PATCH_CENTER, m, pu)
            if abs(mc.mass_patch - mc.mass_log) > MASS_REL_TOL * mc.mass_log:
                failures.append(f"patch mass {mc.mass_patch!r} != 2m = {mc.mass_log!r}")
            if mc.mass_quadrature is not None and abs(mc.mass_quadrature - mc.mass_log) > MASS_QUAD_TOL * mc.mass_log:
                failures.append(f"quadrature patch mass {mc.mass_quadrature:.12g} != 2m at m={m}")
        for m in SLOPE_MULTIPLICITIES:
            sl = patch_radial_slopes(m, pu, h=SLOPE_STEP)
            slope_err = max(slope_err, abs(sl.inside - sl.exact) / sl.exact, abs(sl.outside - sl.exact) / sl.exact)
        if jump > CONTINUITY_TOL:
            failures.append(f"patch jumps by {jump:.3e} across ∂D(λ, r)")
        if slope_err > SLOPE_REL_TOL:
            failures.append(f"patch radial slopes miss √(m(m+e)) by {slope_err:.3e}")
        if lap_err > LAPLACIAN_TOL * 2 * e:
            failures.append(f"patch invariant Laplacian off by {lap_err:.3e}")
        constants.update({"patch_jump": jump, "patch_boundary_samples": boundary_samples,
                          "slope_rel_err": slope_err, "patch_laplacian_err": lap_err})
        return failures

    def _weight_w_findings(self, params: WeightParams, constants: Dict[str, Any]) -> List[str]:
        failures: List[str] = []
        e = params.exponent
        mode = params.mode.value
        worst_neg, max_w, samples = 0.0, -math.inf, 0
        fd_err, ohsawa_min = 0.0, math.inf
        for m in W_MULTIPLICITIES:
            d = Divisor(params.alpha, params.p, (DivisorPoint(DiskPoint(W_CENTER), m),))
            prof = weight_profile(W_CENTER, m, params)
            floor = weight_laplacian_lower_bound(params, prof.K_value)
            radii = np.linspace(prof.r_inner, prof.r_outer, W_RADIAL + 2)[1:-1]
            for a in radii.tolist():
                if radial_weight_laplacian(a, prof) < floor - BOUND_SLACK * abs(floor):
                    failures.append(f"{mode} m={m}: Δ̃w below -4e/K at |φ|={a:.6g}")
                for theta in _angles(W_ANGLES).tolist():
                    value = weight_w(mobius(W_CENTER, a * _cis(theta)), d, params)
                    worst_neg = max(worst_neg, -value)
                    max_w = max(max_w, value)
                    samples += 1
            for a in (0.25 * prof.r_inner, 0.5 * prof.r_inner, 0.75 * prof.r_inner):
                max_w = max(max_w, weight_w(mobius(W_CENTER, a), d, params))
            outside = weight_w(mobius(W_CENTER, 0.5 * (1 + prof.r_outer)), d, params)
            if outside != 0.0:
                failures.append(f"{mode} m={m}: w = {outside!r} outside the dilated disk")

            def zone(w: complex, prof=prof) -> Tuple[bool, bool]:
                a = rho(W_CENTER, w)
                return a < prof.r_inner, a < prof.r_outer

            ohsawa_floor = ohsawa_curvature_floor(params, prof.K_value)
            for frac in (0.3, 0.5, 0.7):
                a = prof.r_inner + frac * (prof.r_outer - prof.r_inner)
                z = mobius(W_CENTER, a * _cis(1.0))
                est = invariant_laplacian_fd(lambda w: weight_w(w, d, params), z, region=zone)
                exact = radial_weight_laplacian(a, prof)
                if not est.valid:
                    failures.append(f"{mode} m={m}: weight Laplacian stencil invalid")
                    continue
                fd_err = max(fd_err, abs(est.value - exact) / abs(exact))
            for a in (0.5 * prof.r_inner, prof.r_inner + 0.5 * (prof.r_outer - prof.r_inner)):
                z = mobius(W_CENTER, a * _cis(2.0))
                est = invariant_laplacian_fd(lambda w: ohsawa_weight(w, d, params), z, region=zone)
                if est.valid:
                    ohsawa_min = min(ohsawa_min, est.value - ohsawa_floor)
                    if est.value < ohsawa_floor - WEIGHT_FD_REL_TOL * 4 * e:
                        failures.append(f"{mode} m={m}: Ohsawa curvature {est.value:.6g} below {ohsawa_floor:.6g}")
        if samples < W_MIN_SAMPLES:
            failures.append(f"{mode}: only {samples} annulus samples, need {W_MIN_SAMPLES}")
        if max_w > 1e-12:
            failures.append(f"{mode}: w reaches {max_w:.3e} > 0")
        if worst_neg > e * (1 + BOUND_SLACK):
            failures.append(f"{mode}: -w reaches {worst_neg:.6g} > {e:g} on the annulus")
        if fd_err > WEIGHT_FD_REL_TOL:
            failures.append(f"{mode}: finite-difference Δ̃w misses -4mξ by {fd_err:.3e}")
        constants[mode] = {"annulus_samples": samples, "max_minus_w": worst_neg, "max_w": max_w,
                           "laplacian_fd_rel_err": fd_err, "ohsawa_margin": ohsawa_min}
        return failures

    def _check_jensen_budget(self, rng: np.random.Generator) -> Findings:
        failures: List[str] = []
        data, sha = load_fixture(JENSEN_FIXTURE)
        radii = sorted(self.config.jensen_radii)
        lattice = divisor_from_fixture(data, r_end=radii[-1])
        params = WeightParams(lattice.alpha, float(data["rule"]["constant"]), WeightMode.UNIQUENESS_EPS)
        sparse = Divisor(lattice.alpha, lattice.p, (DivisorPoint(DiskPoint(0.0), 1),))
        covered, thin = [], []
        threshold = math.nan
        for r in radii:
            budget = jensen_budget(lattice, params, r)
            threshold = budget.rhs / budget.log_term
            covered.append(budget.normalized)
            if not budget.normalized > threshold:
                failures.append(f"lattice budget {budget.normalized:.4f} <= {threshold:.4f} at r={r}")
            lone = jensen_budget(sparse, params, r)
            thin.append(lone.normalized)
            if not lone.normalized < threshold:
                failures.append(f"sparse budget {lone.normalized:.4f} >= {threshold:.4f} at r={r}")
        if covered[-1] < JENSEN_TARGET:
            failures.append(f"lattice budget {covered[-1]:.4f} at r={radii[-1]} below {JENSEN_TARGET}")
        return failures, {"fixture_sha256": sha, "lattice_points": len(lattice), "radii": radii,
                          "threshold": threshold, "lattice": covered, "sparse": thin}

    # ------------------------------------------------------------------
    # Growth spaces, comparisons, gaps
    # ------------------------------------------------------------------

    def _check_growth_space(self, rng: np.random.Generator) -> Findings:
        failures: List[str] = []
        constants: Dict[str, Any] = {}
        for alpha, c in VARTHETA_PAIRS:
            gap = vartheta_gap(VARTHETA_M, alpha, c)
            limit = vartheta_gap_limit(alpha, c)
            constants[f"gap alpha={alpha:g},C={c:g}"] = {"gap": gap, "limit": limit}
            if abs(gap - limit) > VARTHETA_TOL:
                failures.append(f"ϑ gap {gap:.6g} vs limit {limit:.6g} at alpha={alpha:g}, C={c:g}")
        for alpha in SUP_NORM_ALPHAS:
            for m in SUP_NORM_M:
                res = sup_norm_inf(monomial(alpha, m), alpha)
                t_star = vartheta_minimizer(m, alpha)
                expected = math.exp(-vartheta(m, alpha, t_star))
                where = abs(abs(res.argmax) - t_star)
                rel = abs(res.value - expected) / expected
                constants[f"sup alpha={alpha:g},m={m}"] = {"argmax_modulus": abs(res.argmax), "value": res.value}
                if where > 1.0 / 400:
                    failures.append(f"maximizer of z^{m} at |z|={abs(res.argmax):.5f}, expected {t_star:.5f}")
                if rel > PARSEVAL_REL_TOL:
                    failures.append(f"sup norm of z^{m} off by {rel:.3e}")
        return failures, constants

    def _check_radius_shift(self, rng: np.random.Generator) -> Findings:
        failures: List[str] = []
        checked = 0
        for alpha in SHIFT_ALPHAS:
            for eps in SHIFT_EPSILONS:
                for m in range(1, self.config.m_max + 1):
                    res = compare_radius_shift(m, alpha, eps)
                    if res.skipped:
                        continue
                    checked += 1
                    if not res.holds:
                        failures.append(f"radius comparison fails at m={m}, alpha={alpha:g}, eps={eps:g}")
        if checked == 0:
            failures.append("no multiplicity above C2 in the sweep")
        return failures, {"cases": checked}

    def _check_dbar_ingredients(self, rng: np.random.Generator) -> Findings:
        failures: List[str] = []
        constants: Dict[str, Any] = {}
        points = tuple(DivisorPoint(DiskPoint(0.1 * k * _cis(k)), k) for k in range(1, DBAR_POINTS + 1))
        for params in (self.params_p2, self.params_pinf):
            if params is None:
                continue
            mode = params.mode.value
            e, c = params.exponent, params.constant
            d = Divisor(params.alpha, params.p, points)
            report = dbar_ingredient_bounds(d, params)
            constants[mode] = {"separated": report.separated,
                               "max_ratio": max(row.ratio for row in report.rows)}
            if not report.holds:
                failures.append(f"{mode}: (1-r²)/(r'-r) exceeds 2e/C")
            for row in report.rows:
                if row.slope > row.slope_reference * (1 + BOUND_SLACK):
                    failures.append(f"{mode}: cut-off slope {row.slope:.6g} above 2(m+e)/C at point {row.index}")
            worst = 0.0
            for pt in d.points:
                r, r1 = inner_radius(pt.m, params), outer_radius(pt.m, params)
                for theta in _angles(6).tolist():
                    z = mobius(pt.lam, 0.5 * (r + r1) * _cis(theta))
                    worst = max(worst, cutoff_gradient_bound(z, pt.lam, r, r1) * (1 - abs(z) ** 2))
            constants[mode]["max_cutoff_gradient"] = worst
            if worst > e / c * (1 + BOUND_SLACK):
                failures.append(f"{mode}: cut-off gradient {worst:.6g} above e/C = {e / c:.6g}")
        return failures, constants

    def _check_gap_estimates(self, rng: np.random.Generator) -> Findings:
        cfg = self.config
        failures: List[str] = []
        constants: Dict[str, Any] = {}
        for alpha in cfg.alphas:
            for p in (PSpace.TWO, PSpace.INFINITY):
                shift = alpha + 1 if p is PSpace.TWO else alpha
                if shift <= 0:
                    continue
                for frac in GAP_FRACTIONS:
                    c = frac * shift
                    bad = [m for m in range(1, cfg.m_max + 1)
                           if gap_lower_bound(m, alpha, c, p) > gap_actual(m, alpha, c, p) * (1 + BOUND_SLACK)]
                    if bad:
                        failures.append(f"gap bound exceeds the exact gap at alpha={alpha:g}, p={p.value}, "
                                        f"C={c:g}, m={bad[0]}")
                if p is PSpace.INFINITY:
                    c = 0.5 * shift
                    lim_err = abs(gap_lower_bound(VARTHETA_M, alpha, c, p) - inf_gap_lower_bound(alpha, c))
                    constants[f"inf_limit_err alpha={alpha:g}"] = lim_err
                    if lim_err > VARTHETA_TOL:
                        failures.append(f"A^inf gap bound not near its limit at alpha={alpha:g}")
            for c in cfg.cs:
                if c < 1:
                    continue
                delta = interpolation_margin(alpha, c).delta
                worst = min(boundary_gap(m, alpha, c) for m in range(math.floor(c) + 1, cfg.m_max + 1))
                constants[f"boundary_gap alpha={alpha:g},C={c:g}"] = {"min": worst, "delta": delta}
                if worst < delta * (1 - BOUND_SLACK):
                    failures.append(f"boundary gap {worst:.6g} below δ={delta:.6g} at alpha={alpha:g}, C={c:g}")
        return failures, constants
