"""Uncertainties, well occupancies and information measures of a state.

Moments of x and p are computed algebraically from ladder-operator matrices
(quadrature-free); the entropic functionals are Simpson integrals of sampled
densities, with density derivatives taken from the analytic Hermite
derivative rather than finite differences.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .basis import (
    momentum_squared_matrix,
    position_matrix,
    position_squared_matrix,
)
from .potential import WellGeometry, WellSide
from .spectrum import Spectrum
from .wavefunction import (
    GridFunction,
    UniformGrid,
    eval_position,
    grid_integral,
    probability_below,
)

__all__ = [
    "UncertaintyReport",
    "InfoMeasures",
    "WellOccupancy",
    "Occupancy",
    "NotNormalized",
    "uncertainties",
    "well_occupancy",
    "classify_occupancy",
    "shannon",
    "fisher",
    "onicescu",
    "os_measure",
    "info_measures",
    "SHANNON_TOTAL_BOUND",
    "FISHER_PRODUCT_BOUND",
    "ONICESCU_PRODUCT_BOUND",
    "OS_TOTAL_BOUND",
]

# lower bounds saturated by the Gaussian ground state
SHANNON_TOTAL_BOUND = 1.0 + math.log(math.pi)
FISHER_PRODUCT_BOUND = 4.0
ONICESCU_PRODUCT_BOUND = 1.0 / (2.0 * math.pi)
OS_TOTAL_BOUND = 0.5 * math.pi ** (-1.0 / 3.0) * math.exp(2.0 / 3.0)

NORMALIZATION_TOL = 1e-4
RHO_TINY = 1e-300

WELL_I_THRESHOLD = 0.9
WELL_II_THRESHOLD = 0.1


class NotNormalized(ValueError):
    """Density integral deviates from 1 beyond the accepted tolerance."""


class Occupancy(enum.Enum):
    WELL_I = "I"
    WELL_II = "II"
    BOTH = "both"


@dataclass(frozen=True)
class UncertaintyReport:
    mean_x: float
    mean_p: float
    delta_x: float
    delta_p: float

    @property
    def product(self) -> float:
        return self.delta_x * self.delta_p


@dataclass(frozen=True)
class WellOccupancy:
    """Probability split across the barrier; well I is the deeper well."""

    p_well_I: float
    p_well_II: float
    barrier_x: float
    classification: Occupancy


@dataclass(frozen=True)
class InfoMeasures:
    s_x: float
    s_p: float
    i_x: float
    i_p: float
    e_x: float
    e_p: float

    @property
    def s_total(self) -> float:
        return self.s_x + self.s_p

    @property
    def i_product(self) -> float:
        return self.i_x * self.i_p

    @property
    def e_product(self) -> float:
        return self.e_x * self.e_p

    @property
    def os_x(self) -> float:
        return os_measure(self.s_x, self.e_x)

    @property
    def os_p(self) -> float:
        return os_measure(self.s_p, self.e_p)

    @property
    def os_total(self) -> float:
        return os_measure(self.s_total, self.e_product)


def uncertainties(spec: Spectrum, n: int) -> UncertaintyReport:
    """Exact first and second moments of x and p for state n.

    Eigenvectors are real, so <p> vanishes identically for stationary
    states; it is reported as 0.
    """
    c = spec.vector(n)
    x_mat = position_matrix(spec.basis)
    x2_mat = position_squared_matrix(spec.basis)
    p2_mat = momentum_squared_matrix(spec.basis)
    mean_x = float(c @ (x_mat @ c))
    mean_x2 = float(c @ (x2_mat @ c))
    mean_p2 = float(c @ (p2_mat @ c))
    var_x = max(mean_x2 - mean_x * mean_x, 0.0)
    return UncertaintyReport(
        mean_x=mean_x,
        mean_p=0.0,
        delta_x=math.sqrt(var_x),
        delta_p=math.sqrt(max(mean_p2, 0.0)),
    )


def classify_occupancy(p_well_I: float) -> Occupancy:
    if p_well_I >= WELL_I_THRESHOLD:
        return Occupancy.WELL_I
    if p_well_I <= WELL_II_THRESHOLD:
        return Occupancy.WELL_II
    return Occupancy.BOTH


def well_occupancy(
    spec: Spectrum,
    n: int,
    geometry: WellGeometry,
    grid: UniformGrid,
    psi: GridFunction | None = None,
) -> WellOccupancy:
    """Probability of finding state n on the deeper-well side of the barrier.

    Single-well geometries classify as well I with probability 1.  For an
    exactly symmetric double well the deeper side is taken as the left one
    (either choice integrates to 1/2).
    """
    if psi is None:
        psi = eval_position(spec, n, grid)
    rho = psi.density()
    if not geometry.is_double_well:
        return WellOccupancy(1.0, 0.0, math.nan, Occupancy.WELL_I)
    x_b = geometry.barrier[0]
    total = grid_integral(rho)
    p_left = probability_below(rho, x_b) / total
    p_right = 1.0 - p_left
    if geometry.deeper_well_side is WellSide.RIGHT:
        p_i, p_ii = p_right, p_left
    else:
        p_i, p_ii = p_left, p_right
    return WellOccupancy(p_i, p_ii, x_b, classify_occupancy(p_i))


def _check_density(rho: GridFunction) -> np.ndarray:
    vals = np.real(rho.values)
    total = grid_integral(rho)
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise NotNormalized(f"density integrates to {total:.8f}")
    return vals


def shannon(rho: GridFunction) -> float:
    """S = -int rho ln rho, with 0 ln 0 = 0."""
    vals = _check_density(rho)
    integrand = np.where(vals > 0.0, -vals * np.log(np.maximum(vals, RHO_TINY)), 0.0)
    return grid_integral(GridFunction(rho.x0, rho.dx, integrand))


def fisher(psi: GridFunction, dpsi: GridFunction) -> float:
    """I = int rho'^2 / rho with rho = |psi|^2, rho' = 2 Re(psi* psi')."""
    rho = np.abs(psi.values) ** 2
    drho = 2.0 * np.real(np.conj(psi.values) * dpsi.values)
    _check_density(GridFunction(psi.x0, psi.dx, rho))
    integrand = np.where(rho > RHO_TINY, drho * drho / np.maximum(rho, RHO_TINY), 0.0)
    return grid_integral(GridFunction(psi.x0, psi.dx, integrand))


def onicescu(rho: GridFunction) -> float:
    """E = int rho^2 (disequilibrium)."""
    vals = _check_density(rho)
    return grid_integral(GridFunction(rho.x0, rho.dx, vals * vals))


def os_measure(s: float, e: float) -> float:
    """Composite measure exp(2 S / 3) * E."""
    return math.exp(2.0 * s / 3.0) * e


def info_measures(
    psi_x: GridFunction,
    dpsi_x: GridFunction,
    psi_p: GridFunction,
    dpsi_p: GridFunction,
) -> InfoMeasures:
    """All position/momentum measures of one state from sampled functions."""
    rho_x = psi_x.density()
    rho_p = psi_p.density()
    return InfoMeasures(
        s_x=shannon(rho_x),
        s_p=shannon(rho_p),
        i_x=fisher(psi_x, dpsi_x),
        i_p=fisher(psi_p, dpsi_p),
        e_x=onicescu(rho_x),
        e_p=onicescu(rho_p),
    )
