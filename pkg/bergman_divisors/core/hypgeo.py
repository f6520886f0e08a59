"""
hypgeo — pseudohyperbolic geometry of the unit disk

Möbius involutions φ_λ(z) = (λ - z)/(1 - λ̄z), the distance ρ(u, v) = |φ_u(v)|,
pseudohyperbolic disks and their Euclidean form, and the invariant measure
dν = (1-|z|²)^{-2} dm with m normalized so that m(𝕌) = 1 (dm = dA/π).

Scalar functions take DiskPoint or plain complex; the *_array variants work
on numpy arrays and skip validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict, Union

import numpy as np
from scipy import integrate

from .errors import DomainError

BOUNDARY_GUARD = 1e-15
GEOMETRY_TOL = 1e-12


@dataclass(frozen=True)
class DiskPoint:
    value: complex

    def __post_init__(self) -> None:
        z = complex(self.value)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)) or abs(z) >= 1 - BOUNDARY_GUARD:
            raise DomainError(f"point must lie in the open unit disk, got {self.value}")
        object.__setattr__(self, "value", z)

    def __complex__(self) -> complex:
        return self.value

    def to_dict(self) -> Dict[str, float]:
        return {"re": self.value.real, "im": self.value.imag}


PointLike = Union[DiskPoint, complex, float]


def as_point(z: PointLike) -> complex:
    """Validate and unwrap a point of the open disk."""
    if isinstance(z, DiskPoint):
        return z.value
    return DiskPoint(complex(z)).value


@dataclass(frozen=True)
class PseudoDisk:
    """D(λ, r) = {z : ρ(λ, z) < r}."""

    center: DiskPoint
    radius: float

    def __post_init__(self) -> None:
        if not isinstance(self.center, DiskPoint):
            object.__setattr__(self, "center", DiskPoint(complex(self.center)))
        if not 0 < self.radius < 1:
            raise DomainError(f"pseudohyperbolic radius must lie in (0, 1), got {self.radius}")


@dataclass(frozen=True)
class EuclideanDisk:
    center: complex
    radius: float

    def contains(self, z: Any) -> Any:
        return np.abs(np.asarray(z) - self.center) < self.radius

    def to_dict(self) -> Dict[str, float]:
        return {"re": self.center.real, "im": self.center.imag, "radius": self.radius}


def mobius_array(lam: Any, z: Any) -> np.ndarray:
    lam = np.asarray(lam, dtype=complex)
    z = np.asarray(z, dtype=complex)
    return (lam - z) / (1 - np.conj(lam) * z)


def rho_array(u: Any, v: Any) -> np.ndarray:
    return np.abs(mobius_array(u, v))


def mobius(lam: PointLike, z: PointLike) -> complex:
    """φ_λ(z) = (λ - z)/(1 - λ̄z); an involution of the disk swapping 0 and λ."""
    lam = as_point(lam)
    z = as_point(z)
    return (lam - z) / (1 - lam.conjugate() * z)


def rho(u: PointLike, v: PointLike) -> float:
    """Pseudohyperbolic distance |φ_u(v)| in [0, 1)."""
    return abs(mobius(u, v))


def pseudo_to_euclid(d: PseudoDisk) -> EuclideanDisk:
    """Euclidean form of D(λ, t): center (1-t²)λ/(1-t²|λ|²), radius (1-|λ|²)t/(1-t²|λ|²)."""
    lam = d.center.value
    t = d.radius
    denom = 1 - t * t * abs(lam) ** 2
    return EuclideanDisk(center=(1 - t * t) / denom * lam, radius=(1 - abs(lam) ** 2) / denom * t)


def euclid_arrays(centers: np.ndarray, radii: np.ndarray) -> tuple:
    """Vectorized pseudo_to_euclid over arrays of centers and radii."""
    mod2 = np.abs(centers) ** 2
    denom = 1 - radii * radii * mod2
    return (1 - radii * radii) / denom * centers, (1 - mod2) / denom * radii


def euclidean_boundary(d: PseudoDisk, n: int = 64) -> np.ndarray:
    e = pseudo_to_euclid(d)
    theta = 2 * np.pi * np.arange(n) / n
    return e.center + e.radius * np.exp(1j * theta)


def disks_disjoint(lam1: PointLike, r1: float, lam2: PointLike, r2: float) -> bool:
    """Exact test: D(λ1, r1) ∩ D(λ2, r2) = ∅ iff ρ(λ1, λ2) >= (r1+r2)/(1+r1 r2)."""
    return rho(lam1, lam2) >= (r1 + r2) / (1 + r1 * r2)


def invariant_disk_mass(r: float) -> float:
    """ν(D(ζ, r)) = r²/(1-r²) for every center ζ."""
    r = float(r)
    if not 0 < r < 1:
        raise DomainError(f"radius must lie in (0, 1), got {r}")
    return r * r / (1 - r * r)


def invariant_mass_quadrature(d: PseudoDisk, epsrel: float = 1e-10) -> float:
    """ν(D(λ, r)) by 2-D adaptive quadrature over the Euclidean form, dm = dA/π."""
    e = pseudo_to_euclid(d)
    c = e.center

    def density(s: float, theta: float) -> float:
        z = c + s * complex(math.cos(theta), math.sin(theta))
        return s / (1 - abs(z) ** 2) ** 2

    value, _ = integrate.dblquad(density, 0.0, 2 * math.pi, 0.0, e.radius, epsabs=0.0, epsrel=epsrel)
    return value / math.pi
