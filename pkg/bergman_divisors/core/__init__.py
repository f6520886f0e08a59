"""Core numerics: special functions, disk geometry, divisors, truncated model, weights."""

from .divisor import (
    ConditionReport,
    CoveringResult,
    Divisor,
    DivisorPoint,
    GridSpec,
    PSpace,
    RadiusRule,
    RuleKind,
    SeparationResult,
    blaschke_sum,
    build_condition_report,
    check_covering,
    check_separation,
    compare_radius_shift,
    generate_lattice,
    overlap_constant,
    parse_schedule,
    radius_for,
)
from .errors import (
    BergmanError,
    ConstraintError,
    DegreeError,
    DivisorFormatError,
    DomainError,
    PreconditionError,
    ResolutionError,
    SpecialOverflowError,
)
from .hypgeo import DiskPoint, EuclideanDisk, PseudoDisk, invariant_disk_mass, mobius, pseudo_to_euclid, rho
from .io import divisor_from_fixture, load_divisor, load_fixture, load_targets
from .model import (
    FrameBounds,
    GramSystem,
    InterpolationResult,
    SampleIndex,
    TruncatedFunction,
    bessel_sum,
    build_gram,
    evaluate,
    frame_bounds,
    interpolate,
    local_coeff_control_check,
    local_control_p2,
    local_norm_sq,
    sample_coeff,
    sup_norm_inf,
    translate,
)
from .specfun import (
    BetaParams,
    EvalResult,
    beta,
    gautschi_check,
    inc_gamma_upper,
    kernel_tail_F,
    kernel_tail_R,
    log_gamma,
    reg_inc_beta,
    vartheta,
)
from .weights import (
    K_constant,
    WeightMode,
    WeightParams,
    WeightProfile,
    dbar_ingredient_bounds,
    invariant_laplacian_fd,
    jensen_budget,
    mass_check,
    patch_v,
    weight_w,
    xi,
)

__all__ = [
    "BergmanError", "ConstraintError", "DegreeError", "DivisorFormatError", "DomainError",
    "PreconditionError", "ResolutionError", "SpecialOverflowError",
    "BetaParams", "EvalResult", "log_gamma", "beta", "reg_inc_beta", "inc_gamma_upper",
    "gautschi_check", "kernel_tail_F", "kernel_tail_R", "vartheta",
    "load_divisor", "load_targets", "load_fixture", "divisor_from_fixture",
    "DiskPoint", "PseudoDisk", "EuclideanDisk", "mobius", "rho", "pseudo_to_euclid", "invariant_disk_mass",
    "PSpace", "DivisorPoint", "Divisor", "RuleKind", "RadiusRule", "GridSpec", "CoveringResult",
    "SeparationResult", "ConditionReport", "radius_for", "overlap_constant", "check_covering",
    "check_separation", "blaschke_sum", "generate_lattice", "compare_radius_shift",
    "build_condition_report", "parse_schedule",
    "TruncatedFunction", "SampleIndex", "GramSystem", "FrameBounds", "InterpolationResult",
    "evaluate", "translate", "sample_coeff", "local_norm_sq", "local_coeff_control_check",
    "build_gram", "frame_bounds", "interpolate", "local_control_p2", "sup_norm_inf", "bessel_sum",
    "WeightMode", "WeightParams", "WeightProfile", "K_constant", "xi", "patch_v",
    "invariant_laplacian_fd", "mass_check", "weight_w", "dbar_ingredient_bounds", "jensen_budget",
]
