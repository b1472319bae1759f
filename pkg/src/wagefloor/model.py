"""Core wage-ratio measures, labor-share identities, transform-unit costs,
and the wage-compression kernel.

Conventions: all wage/GDP quantities are nominal unless stated otherwise;
a "ratio" is a dimensionless wage divided by per-capita GDP on the same
time basis. Hourly values annualize at 2,080 hours (40 h/week x 52).
Every function here is pure and every value immutable after construction.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels

HOURS_PER_YEAR = 2080.0


class DomainError(ValueError):
    """Input outside an operation's mathematical domain."""


def _check_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def _check_positive(name: str, value: float) -> float:
    value = _check_finite(name, value)
    if value <= 0.0:
        raise DomainError(f"{name} must be strictly positive, got {value!r}")
    return value


def _check_non_negative(name: str, value: float) -> float:
    value = _check_finite(name, value)
    if value < 0.0:
        raise DomainError(f"{name} must be non-negative, got {value!r}")
    return value


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LaborShareAccount:
    """One economy-year of compensation accounting.

    ``t_mean`` is mean hourly total compensation divided by annual per-capita
    GDP (units 1/hour). The remaining fields are the raw aggregates it was
    derived from, kept so the two labor-share computation paths can be
    checked against each other.
    """

    t_mean: float
    hours_per_capita: float
    population: float
    gdp: float
    total_compensation: float

    def __post_init__(self):
        for name in ("t_mean", "hours_per_capita", "population", "gdp",
                     "total_compensation"):
            _check_positive(name, getattr(self, name))
        share = self.total_compensation / self.gdp
        if share > 1.0:
            # Identities must still hold on implausible data; flag, don't fail.
            warnings.warn(
                f"labor share {share:.4f} exceeds 1; check input units",
                stacklevel=2,
            )

    @classmethod
    def from_totals(cls, total_compensation: float, gdp: float,
                    population: float, hours_per_capita: float) -> "LaborShareAccount":
        """Build an account, deriving t_mean from the aggregates."""
        _check_positive("gdp", gdp)
        _check_positive("hours_per_capita", hours_per_capita)
        t_mean = total_compensation / (gdp * hours_per_capita)
        return cls(
            t_mean=t_mean,
            hours_per_capita=hours_per_capita,
            population=population,
            gdp=gdp,
            total_compensation=total_compensation,
        )


@dataclass(frozen=True)
class CompensationBreakdown:
    """Composition of total compensation into wage and benefit fractions.

    Defaults follow the private-industry composition: wages 72%, health
    insurance 7.4%, social insurance 8.5%, remainder (leave, bonuses,
    retirement) 12.1%.
    """

    wage_share: float = 0.72
    health_insurance_share: float = 0.074
    social_insurance_share: float = 0.085
    other_share: float = 0.121

    def __post_init__(self):
        parts = (self.wage_share, self.health_insurance_share,
                 self.social_insurance_share, self.other_share)
        for name, value in zip(
            ("wage_share", "health_insurance_share",
             "social_insurance_share", "other_share"), parts):
            value = _check_finite(name, value)
            if not 0.0 <= value <= 1.0:
                raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
        total = sum(parts)
        if abs(total - 1.0) > 1e-9:
            raise DomainError(f"breakdown shares must sum to 1, got {total!r}")


@dataclass(frozen=True)
class TransformUnit:
    """Cost description of producing one output unit with one labor type."""

    labor_hours_per_unit: float
    hourly_wage: float
    non_labor_cost_per_unit: float = 0.0

    def __post_init__(self):
        _check_positive("labor_hours_per_unit", self.labor_hours_per_unit)
        _check_non_negative("hourly_wage", self.hourly_wage)
        _check_non_negative("non_labor_cost_per_unit", self.non_labor_cost_per_unit)


class HorizonSide(Enum):
    """Which side of the cost-equivalence boundary a unit pair sits on."""

    LOW_CHEAPER = "low-cheaper"
    HIGH_CHEAPER = "high-cheaper"
    EQUILIBRIUM = "equilibrium"


class WageDistribution:
    """Binned wage mass: strictly increasing hourly wages with
    employment-hours weights.

    The distribution's minimum wage is the wage of the first bin carrying
    positive mass; leading zero-mass bins are tolerated but unusual.
    """

    __slots__ = ("wages", "masses")

    def __init__(self, wages, masses):
        wages = np.ascontiguousarray(wages, dtype=np.float64)
        masses = np.ascontiguousarray(masses, dtype=np.float64)
        if wages.ndim != 1 or masses.ndim != 1 or wages.shape != masses.shape:
            raise DomainError("wages and masses must be 1-d arrays of equal length")
        if wages.size == 0:
            raise DomainError("distribution must have at least one bin")
        if not np.all(np.isfinite(wages)) or not np.all(np.isfinite(masses)):
            raise DomainError("wages and masses must be finite")
        if np.any(wages < 0.0):
            raise DomainError("wages must be non-negative")
        if np.any(np.diff(wages) <= 0.0):
            raise DomainError("bin wages must be strictly increasing")
        if np.any(masses < 0.0):
            raise DomainError("bin masses must be non-negative")
        if not np.sum(masses) > 0.0:
            raise DomainError("total mass must be positive")
        wages.flags.writeable = False
        masses.flags.writeable = False
        object.__setattr__(self, "wages", wages)
        object.__setattr__(self, "masses", masses)

    def __setattr__(self, name, value):
        raise AttributeError("WageDistribution is immutable")

    def __len__(self) -> int:
        return int(self.wages.size)

    def __repr__(self) -> str:
        return f"WageDistribution({len(self)} bins, min={self.min_wage:g})"

    @property
    def min_wage(self) -> float:
        idx = int(np.argmax(self.masses > 0.0))
        return float(self.wages[idx])

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.masses))

    def mean(self) -> float:
        return kernels.weighted_mean(self.wages, self.masses)

    def median(self) -> float:
        return kernels.weighted_median(self.wages, self.masses)

    def gini(self) -> float:
        return kernels.weighted_gini(self.wages, self.masses)

    def bill(self) -> float:
        """Total wage bill: sum of wage x mass over bins."""
        return kernels.wage_bill(self.wages, self.masses)

    def bins(self) -> list[tuple[float, float]]:
        return [(float(w), float(m)) for w, m in zip(self.wages, self.masses)]


LINEAR_KERNEL = "linear"
_KNOWN_KERNELS = (LINEAR_KERNEL,)


@dataclass(frozen=True)
class CompressionParams:
    """Shape of the upward wage-compression response to a floor increase.

    ``ceiling_ratio`` is the wage (annualized, as a fraction of per-capita
    GDP) above which a floor increase has no effect.
    """

    ceiling_ratio: float = 1.0
    kernel: str = LINEAR_KERNEL

    def __post_init__(self):
        _check_positive("ceiling_ratio", self.ceiling_ratio)
        if self.kernel not in _KNOWN_KERNELS:
            raise DomainError(
                f"unknown kernel {self.kernel!r}; known: {_KNOWN_KERNELS}")


# ---------------------------------------------------------------------------
# Ratio and identity operations
# ---------------------------------------------------------------------------

def labor_share(t_mean: float, hours_per_capita: float) -> float:
    """Labor share implied by hourly compensation ratio and hours worked.

    Equals total compensation over GDP when both arguments come from the
    same accounting year.
    """
    _check_positive("t_mean", t_mean)
    _check_positive("hours_per_capita", hours_per_capita)
    return t_mean * hours_per_capita


def verify_identity(account: LaborShareAccount) -> float:
    """Relative residual between the two labor-share computation paths.

    Path one multiplies the hourly compensation ratio by hours per capita;
    path two divides total compensation by GDP. Algebraically identical,
    so the residual is floating-point noise (<= 1e-12 relative).
    """
    via_ratio = labor_share(account.t_mean, account.hours_per_capita)
    via_accounts = account.total_compensation / account.gdp
    return abs(via_ratio - via_accounts) / abs(via_accounts)


def t_mean_from_wage(w_mean: float, breakdown: CompensationBreakdown) -> float:
    """Total-compensation ratio implied by a wage ratio and its wage share."""
    _check_positive("w_mean", w_mean)
    if breakdown.wage_share == 0.0:
        raise DomainError("wage_share must be non-zero to invert")
    return w_mean / breakdown.wage_share


def ratio_nominal(nominal_wage: float, nominal_gdppc: float) -> float:
    """Dimensionless wage over per-capita GDP; both on the same time basis."""
    _check_non_negative("nominal_wage", nominal_wage)
    _check_finite("nominal_gdppc", nominal_gdppc)
    if nominal_gdppc <= 0.0:
        raise DomainError(f"nominal_gdppc must be positive, got {nominal_gdppc!r}")
    return nominal_wage / nominal_gdppc


def deflator_invariance(nominal_wage: float, nominal_gdppc: float,
                        deflator: float) -> tuple[float, float]:
    """(nominal/nominal, real/real) ratio pair; the deflator divides out."""
    _check_positive("deflator", deflator)
    nominal_ratio = ratio_nominal(nominal_wage, nominal_gdppc)
    real_ratio = ratio_nominal(nominal_wage / deflator, nominal_gdppc / deflator)
    return nominal_ratio, real_ratio


def decompose_gdppc(labor_productivity: float, avg_hours_per_worker: float,
                    employment_ratio: float) -> float:
    """Per-capita GDP as productivity x hours per worker x employment rate."""
    _check_non_negative("labor_productivity", labor_productivity)
    _check_non_negative("avg_hours_per_worker", avg_hours_per_worker)
    _check_non_negative("employment_ratio", employment_ratio)
    return labor_productivity * avg_hours_per_worker * employment_ratio


# ---------------------------------------------------------------------------
# Transform units and the cost-equivalence horizon
# ---------------------------------------------------------------------------

def transform_cost(u: TransformUnit) -> float:
    """Total cost of producing one unit with the given labor type."""
    return u.labor_hours_per_unit * u.hourly_wage + u.non_labor_cost_per_unit


def horizon_side(low: TransformUnit, high: TransformUnit,
                 tol: float = 0.0) -> HorizonSide:
    """Classify which production method is cheaper, within ``tol``."""
    _check_non_negative("tol", tol)
    cost_low = transform_cost(low)
    cost_high = transform_cost(high)
    if cost_low < cost_high - tol:
        return HorizonSide.LOW_CHEAPER
    if cost_high < cost_low - tol:
        return HorizonSide.HIGH_CHEAPER
    return HorizonSide.EQUILIBRIUM


def crossing_wage(low: TransformUnit, high: TransformUnit) -> float:
    """Low-productivity hourly wage at which the two unit costs are equal.

    May be negative, which signals the high-productivity unit is already
    cheaper at any non-negative wage.
    """
    cost_high = transform_cost(high)
    return (cost_high - low.non_labor_cost_per_unit) / low.labor_hours_per_unit


# ---------------------------------------------------------------------------
# Wage compression
# ---------------------------------------------------------------------------

def compress(dist: WageDistribution, new_min: float, params: CompressionParams,
             gdppc: float) -> WageDistribution:
    """Raise the distribution's floor to ``new_min``, lifting nearby wages.

    Each bin wage w moves to w + (new_min - old_min) * k(w), with the linear
    kernel k(w) = clamp((ceiling - w) / (ceiling - old_min), 0, 1) and the
    ceiling converted from ratio space to hourly via gdppc / 2080. Masses
    are untouched; ordering is preserved; wages at or above the ceiling do
    not move; the output minimum is exactly ``new_min``.

    Lowering the floor is a domain error: falling ratios come from GDP
    growth, never from nominal wage cuts.
    """
    _check_positive("gdppc", gdppc)
    new_min = _check_finite("new_min", new_min)
    old_min = dist.min_wage
    if new_min < old_min:
        raise DomainError(
            f"new_min {new_min!r} is below the current minimum {old_min!r}")
    ceiling = params.ceiling_ratio * gdppc / HOURS_PER_YEAR
    if ceiling <= new_min:
        raise DomainError(
            f"hourly ceiling {ceiling!r} must exceed new_min {new_min!r}")
    new_wages = kernels.compress_wages(dist.wages, old_min, new_min, ceiling)
    return WageDistribution(new_wages, dist.masses)


def mean_wage(dist: WageDistribution) -> float:
    """Mass-weighted mean hourly wage of the distribution."""
    if not dist.total_mass > 0.0:
        raise DomainError("distribution has no mass")
    return dist.mean()
