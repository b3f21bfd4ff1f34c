"""Optimum (geodesic) reparametrizations of the probability curves, their
entropic speed, entropy production rate and efficiency, and the
exponential-vs-power-law speed comparison.

With a single parameter the geodesic equation collapses to

    theta'' = -(1/2F) dF/dtheta * theta'^2

whose coefficient is 0, lam*tan(lam*theta), 2*lam/(1+lam*theta), lam for
the four envelopes.  All four admit closed-form solutions; a fixed-step
RK4 integrator provides the independent numerical arbiter.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .dynamics import FieldKind
from .errors import PathDomainError, StepTooLargeError
from .fisher import (
    FisherFunction,
    Normalization,
    SmoothPath,
    entropic_divergence,
    entropic_length,
)
from .scenarios import ScenarioParams

#: pole-proximity threshold for the oscillatory coefficient
_POLE_TOL = 1e-12


class GeodesicForm(enum.Enum):
    EXACT = "exact"
    ALTERNATE = "alternate"


def geodesic_rhs(scenario: ScenarioParams, theta: float, theta_dot: float) -> float:
    """Acceleration theta'' for the optimum-path equation."""
    kind = scenario.kind
    lam = scenario.lam
    if kind == FieldKind.CONSTANT:
        return 0.0
    if kind == FieldKind.OSCILLATORY:
        if abs(math.cos(lam * theta)) < _POLE_TOL:
            raise PathDomainError(
                f"metric vanishes at lam*theta = pi/2 + k*pi (theta={theta!r})"
            )
        return lam * math.tan(lam * theta) * theta_dot * theta_dot
    if kind == FieldKind.POWER_LAW:
        return 2.0 * lam / (1.0 + lam * theta) * theta_dot * theta_dot
    return lam * theta_dot * theta_dot


@dataclass(frozen=True)
class GeodesicSolution:
    """Closed-form optimum path theta(xi) with initial data (theta0,
    thetadot0) at xi0 and validity domain [xi_min, xi_max); singular
    endpoints are excluded.  The oscillatory case carries a form tag: the
    EXACT solution of the path equation, or the ALTERNATE variant that
    arcsines the affine parameter directly (the two coincide for
    theta0 = 0, thetadot0 = 1, xi0 = 0, but the variant does not solve
    the path equation in general)."""

    scenario: ScenarioParams
    theta0: float
    thetadot0: float
    xi0: float
    form: GeodesicForm
    xi_min: float
    xi_max: float

    # -- domain ---------------------------------------------------------

    def contains(self, xi) -> bool:
        x = np.asarray(xi, dtype=float)
        kind = self.scenario.kind
        if kind == FieldKind.OSCILLATORY and self.form == GeodesicForm.EXACT:
            return bool(np.all((x > self.xi_min) & (x < self.xi_max)))
        if kind == FieldKind.OSCILLATORY:  # ALTERNATE: closed interval
            return bool(np.all((x >= self.xi_min) & (x <= self.xi_max)))
        return bool(np.all((x >= self.xi_min) & (x < self.xi_max)))

    def _validate(self, xi):
        if not self.contains(xi):
            raise PathDomainError(
                f"xi outside validity domain [{self.xi_min!r}, {self.xi_max!r})"
            )

    # -- evaluators ------------------------------------------------------

    def theta(self, xi):
        self._validate(xi)
        x = np.asarray(xi, dtype=float)
        lam = self.scenario.lam
        td0 = self.thetadot0
        dx = x - self.xi0
        kind = self.scenario.kind
        if kind == FieldKind.CONSTANT:
            out = self.theta0 + td0 * dx
        elif kind == FieldKind.POWER_LAW:
            a = 1.0 + lam * self.theta0
            d = a - lam * td0 * dx
            out = (a * a - d) / (lam * d)
        elif kind == FieldKind.EXPONENTIAL:
            out = self.theta0 - np.log(1.0 - lam * td0 * dx) / lam
        elif self.form == GeodesicForm.EXACT:
            k, phi0 = self._branch()
            s = math.sin(phi0) + lam * td0 * math.cos(phi0) * dx
            out = (k * math.pi + np.arcsin(s)) / lam
        else:
            scale = math.sqrt(max(0.0, 1.0 - (lam * self.xi0) ** 2)) / lam
            out = self.theta0 + scale * td0 * (
                np.arcsin(lam * x) - math.asin(lam * self.xi0)
            )
        return out if np.ndim(out) else float(out)

    def theta_dot(self, xi):
        self._validate(xi)
        x = np.asarray(xi, dtype=float)
        lam = self.scenario.lam
        td0 = self.thetadot0
        dx = x - self.xi0
        kind = self.scenario.kind
        if kind == FieldKind.CONSTANT:
            out = td0 * np.ones_like(x)
        elif kind == FieldKind.POWER_LAW:
            a = 1.0 + lam * self.theta0
            d = a - lam * td0 * dx
            out = td0 * a * a / (d * d)
        elif kind == FieldKind.EXPONENTIAL:
            out = td0 / (1.0 - lam * td0 * dx)
        elif self.form == GeodesicForm.EXACT:
            _, phi0 = self._branch()
            b = lam * td0 * math.cos(phi0)
            s = math.sin(phi0) + b * dx
            out = b / (lam * np.sqrt(1.0 - s * s))
        else:
            scale = td0 * math.sqrt(max(0.0, 1.0 - (lam * self.xi0) ** 2))
            with np.errstate(divide="ignore"):
                out = scale / np.sqrt(1.0 - (lam * x) ** 2)
        return out if np.ndim(out) else float(out)

    def theta_ddot(self, xi):
        self._validate(xi)
        x = np.asarray(xi, dtype=float)
        lam = self.scenario.lam
        td0 = self.thetadot0
        dx = x - self.xi0
        kind = self.scenario.kind
        if kind == FieldKind.CONSTANT:
            out = np.zeros_like(x)
        elif kind == FieldKind.POWER_LAW:
            a = 1.0 + lam * self.theta0
            d = a - lam * td0 * dx
            out = 2.0 * lam * td0 * td0 * a * a / (d * d * d)
        elif kind == FieldKind.EXPONENTIAL:
            u = 1.0 - lam * td0 * dx
            out = lam * td0 * td0 / (u * u)
        elif self.form == GeodesicForm.EXACT:
            _, phi0 = self._branch()
            b = lam * td0 * math.cos(phi0)
            s = math.sin(phi0) + b * dx
            out = b * b * s / (lam * (1.0 - s * s) ** 1.5)
        else:
            scale = td0 * math.sqrt(max(0.0, 1.0 - (lam * self.xi0) ** 2))
            out = scale * lam * lam * x / (1.0 - (lam * x) ** 2) ** 1.5
        return out if np.ndim(out) else float(out)

    def _branch(self):
        lam = self.scenario.lam
        k = round(lam * self.theta0 / math.pi)
        return k, lam * self.theta0 - k * math.pi

    def as_path(self, xi_end: float) -> SmoothPath:
        """Path over [0, xi_end - xi0] for the length/divergence
        functionals, with analytic derivative."""
        self._validate(xi_end)
        xi0 = self.xi0
        return SmoothPath(
            theta=lambda s: self.theta(xi0 + s),
            theta_dot=lambda s: self.theta_dot(xi0 + s),
            tau=xi_end - xi0,
        )


def geodesic_closed_form(
    scenario: ScenarioParams,
    theta0: float,
    thetadot0: float,
    xi0: float = 0.0,
    form: GeodesicForm = GeodesicForm.EXACT,
) -> GeodesicSolution:
    """Closed-form optimum path for the scenario.

    Constant: theta0 + thetadot0*(xi - xi0) on all xi.  Power law and
    exponential: finite blow-up at xi0 + (1 + lam*theta0)/(lam*thetadot0)
    and xi0 + 1/(lam*thetadot0).  Oscillatory EXACT:
    theta = (1/lam)*arcsin[sin(lam*theta0) +
            lam*thetadot0*cos(lam*theta0)*(xi - xi0)] (branch-adjusted),
    bounded by the two points where the metric vanishes; ALTERNATE: the
    arcsin(lam*xi) variant on |lam*xi| <= 1.
    """
    if theta0 < 0.0:
        raise ValueError("theta0 must be nonnegative")
    if thetadot0 <= 0.0:
        raise ValueError("thetadot0 must be positive")
    kind = scenario.kind
    lam = scenario.lam
    if kind == FieldKind.CONSTANT:
        xi_min, xi_max = -math.inf, math.inf
        form = GeodesicForm.EXACT
    elif kind == FieldKind.POWER_LAW:
        xi_min = -math.inf
        xi_max = xi0 + (1.0 + lam * theta0) / (lam * thetadot0)
        form = GeodesicForm.EXACT
    elif kind == FieldKind.EXPONENTIAL:
        xi_min = -math.inf
        xi_max = xi0 + 1.0 / (lam * thetadot0)
        form = GeodesicForm.EXACT
    elif form == GeodesicForm.EXACT:
        k = round(lam * theta0 / math.pi)
        phi0 = lam * theta0 - k * math.pi
        c0 = math.cos(phi0)
        if abs(c0) < _POLE_TOL:
            raise PathDomainError(
                "initial point sits where the metric vanishes "
                "(cos(lam*theta0) = 0)"
            )
        b = lam * thetadot0 * c0
        xi_min = xi0 - (1.0 + math.sin(phi0)) / b
        xi_max = xi0 + (1.0 - math.sin(phi0)) / b
    else:
        if abs(lam * xi0) > 1.0:
            raise PathDomainError("alternate form needs |lam*xi0| <= 1")
        xi_min, xi_max = -1.0 / lam, 1.0 / lam
    return GeodesicSolution(
        scenario=scenario,
        theta0=theta0,
        thetadot0=thetadot0,
        xi0=xi0,
        form=form,
        xi_min=xi_min,
        xi_max=xi_max,
    )


@dataclass(frozen=True, eq=False)
class SampledGeodesic:
    """Numerically integrated optimum path: (xi, theta, theta_dot) samples,
    whether the run stopped at a singular boundary, and the peak relative
    drift of the conserved speed over the accepted steps."""

    scenario: ScenarioParams
    xi: np.ndarray
    theta: np.ndarray
    theta_dot: np.ndarray
    exited: bool
    speed_drift: float

    def speeds(self, normalization: Normalization = Normalization.FUBINI_STUDY):
        """sqrt(g(theta)) * theta_dot at every sample."""
        g = FisherFunction(self.scenario, normalization).metric(self.theta)
        return np.sqrt(g) * self.theta_dot


def solve_geodesic_numeric(
    scenario: ScenarioParams,
    theta0: float,
    thetadot0: float,
    xi0: float = 0.0,
    xi_max: float = 1.0,
    dxi: float = 1e-4,
    record_every: int = 1,
    blowup_ratio: float = 1e4,
    drift_tol: float = 1e-6,
) -> SampledGeodesic:
    """Fixed-step RK4 integration of the optimum-path equation.

    Stops early (exited=True, not an error) when the velocity blows up on
    approach to a singular boundary; raises StepTooLargeError when the
    conserved-speed monitor exceeds drift_tol away from any boundary.
    """
    if theta0 < 0.0:
        raise ValueError("theta0 must be nonnegative")
    if thetadot0 <= 0.0:
        raise ValueError("thetadot0 must be positive")
    if xi_max <= xi0:
        raise ValueError("xi_max must exceed xi0")
    if dxi <= 0.0:
        raise ValueError("dxi must be positive")
    if record_every < 1:
        raise ValueError("record_every must be >= 1")
    if scenario.kind == FieldKind.OSCILLATORY:
        if abs(math.cos(scenario.lam * theta0)) < _POLE_TOL:
            raise PathDomainError("initial point sits where the metric vanishes")
    xi, th, td, status, drift = kernels.geodesic_rk4(
        int(scenario.kind),
        scenario.lam,
        theta0,
        thetadot0,
        xi0,
        xi_max,
        dxi,
        record_every,
        blowup_ratio,
        drift_tol,
    )
    if status == kernels.GEO_DRIFT_FAIL:
        raise StepTooLargeError(
            f"conserved-speed drift exceeded {drift_tol:.1e} at xi={xi[-1]!r}; "
            "reduce dxi"
        )
    return SampledGeodesic(
        scenario=scenario,
        xi=xi,
        theta=th,
        theta_dot=td,
        exited=(status == kernels.GEO_DOMAIN_EXIT),
        speed_drift=drift,
    )


def path_functionals(
    fisher: FisherFunction,
    solution: GeodesicSolution,
    xi_end: float,
    dxi=None,
) -> tuple:
    """(length, divergence) of the closed-form path over [xi0, xi_end]."""
    path = solution.as_path(xi_end)
    return entropic_length(fisher, path, dxi), entropic_divergence(fisher, path, dxi)


# -- speed, rate, efficiency ---------------------------------------------


def entropic_speed(
    scenario: ScenarioParams,
    theta0: float,
    thetadot0: float,
    normalization: Normalization = Normalization.FUBINI_STUDY,
) -> float:
    """sqrt(g(theta0)) * thetadot0; constant along the optimum path."""
    if theta0 < 0.0:
        raise ValueError("theta0 must be nonnegative")
    if thetadot0 <= 0.0:
        raise ValueError("thetadot0 must be positive")
    g = FisherFunction(scenario, normalization).metric(theta0)
    return math.sqrt(g) * thetadot0


def entropy_production_rate(
    scenario: ScenarioParams,
    theta0: float,
    thetadot0: float,
    normalization: Normalization = Normalization.FUBINI_STUDY,
) -> float:
    """g(theta0) * thetadot0^2, computed as the squared entropic speed so
    the rate/speed identity holds exactly."""
    v = entropic_speed(scenario, theta0, thetadot0, normalization)
    return v * v


def _snapped_ceiling(rate: float) -> int:
    # rates a hair above an integer (round-off) must not inflate the
    # normalizer: snap to the integer before taking the ceiling
    nearest = round(rate)
    if nearest >= 1 and abs(rate - nearest) <= 1e-12 * max(1.0, abs(rate)):
        return int(nearest)
    return int(math.ceil(rate))


def efficiency_normalizer(rates: Sequence[float]) -> int:
    """Largest ceiling of the competing entropy production rates; >= 1."""
    if not len(rates):
        raise ValueError("need at least one rate")
    if any(r <= 0.0 for r in rates):
        raise ValueError("rates must be strictly positive")
    return max(_snapped_ceiling(r) for r in rates)


def entropic_efficiency(rates: Sequence[float], index: int) -> float:
    """1 - rates[index]/r with r the shared normalizer of the rate list."""
    if not 0 <= index < len(rates):
        raise ValueError("index out of range")
    r = efficiency_normalizer(rates)
    return 1.0 - rates[index] / r


# -- exponential vs power-law comparison -----------------------------------


def unit_peak_rate(gamma: float, constants) -> float:
    """Modulation rate lam for which gamma equals the unit-peak coupling
    (h/4)*lam, i.e. lam = 4*gamma/h."""
    if gamma <= 0.0:
        raise ValueError("gamma must be positive")
    return 4.0 * gamma / constants.h


def speed_ratio(lam, theta0):
    """Power-law over exponential entropic speed at matched parameters:
    exp(lam*theta0) / (1 + lam*theta0)^2.  Values below 1 mean the
    exponential strategy is faster."""
    lam_arr = np.asarray(lam, dtype=float)
    th_arr = np.asarray(theta0, dtype=float)
    if np.any(lam_arr <= 0.0):
        raise ValueError("lam must be positive")
    if np.any(th_arr < 0.0):
        raise ValueError("theta0 must be nonnegative")
    z = lam_arr * th_arr
    out = np.exp(z) / (1.0 + z) ** 2
    return out if np.ndim(out) else float(out)


def crossover_root() -> float:
    """Positive root of exp(z) = (1 + z)^2, the boundary of the region
    where the exponential strategy outperforms the power-law one, by
    bisection on (2.51, 2.52)."""
    f = lambda z: math.exp(z) - (1.0 + z) ** 2
    lo, hi = 2.51, 2.52
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if f(lo) * f(mid) <= 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


#: default comparison grids: log-spaced rates, linear offsets
DEFAULT_RATE_GRID_SIZE = 512
DEFAULT_OFFSET_GRID_SIZE = 512


@dataclass(frozen=True, eq=False)
class RegionGrid:
    """Grid comparison of the two decaying strategies: ratio holds the
    speed ratio per cell, mask is True where the exponential strategy is
    strictly faster, z_star the boundary root."""

    lam: np.ndarray
    theta0: np.ndarray
    ratio: np.ndarray
    mask: np.ndarray
    z_star: float


def region_mask(
    lam_grid: Optional[np.ndarray] = None,
    theta0_grid: Optional[np.ndarray] = None,
) -> RegionGrid:
    """Evaluate the speed ratio on a (lam, theta0) grid.

    Defaults: 512 log-spaced rates in [1e-2, 1e2] and 512 linear offsets
    in (0, 5].  The mask boundary follows lam*theta0 = z_star.
    """
    if lam_grid is None:
        lam_grid = np.logspace(-2.0, 2.0, DEFAULT_RATE_GRID_SIZE)
    if theta0_grid is None:
        theta0_grid = np.linspace(0.0, 5.0, DEFAULT_OFFSET_GRID_SIZE + 1)[1:]
    lam_grid = np.asarray(lam_grid, dtype=float)
    theta0_grid = np.asarray(theta0_grid, dtype=float)
    for name, grid in (("lam_grid", lam_grid), ("theta0_grid", theta0_grid)):
        if np.any(grid <= 0.0):
            raise ValueError(f"{name} must be strictly positive")
        if np.any(np.diff(grid) <= 0.0):
            raise ValueError(f"{name} must be strictly ascending")
    z = lam_grid[:, None] * theta0_grid[None, :]
    ratio = np.exp(z) / (1.0 + z) ** 2
    return RegionGrid(
        lam=lam_grid,
        theta0=theta0_grid,
        ratio=ratio,
        mask=ratio < 1.0,
        z_star=crossover_root(),
    )
