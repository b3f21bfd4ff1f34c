"""Fisher information metric on the probability curves, and the length and
divergence functionals of parametrized paths.

For a binomial curve (p(theta), 1 - p(theta)) the Fisher information is
F(theta) = sum_k (dp_k/dtheta)^2 / p_k, which every scenario here reduces
to 4*(w_H(theta)/hbar)^2 in closed form.  The metric used for lengths and
speeds is F/4 by default (the pure-state metric with vanishing phase
variance); the raw Fisher normalization is kept as an option.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .dynamics import FieldKind
from .errors import NearDegenerateError
from .scenarios import ProbabilityPath, ScenarioParams

#: probability floor below which the finite-difference form is rejected
DEGENERACY_FLOOR = 1e-12


class Normalization(enum.Enum):
    RAW_FISHER = "raw"
    FUBINI_STUDY = "fs"


@dataclass(frozen=True)
class FisherFunction:
    """Closed-form Fisher information of a scenario, with a normalization
    tag that selects the metric g = F (raw) or g = F/4 (default)."""

    scenario: ScenarioParams
    normalization: Normalization = Normalization.FUBINI_STUDY

    def fisher(self, theta):
        """F(theta); accepts scalars or arrays, theta >= 0."""
        th = np.asarray(theta, dtype=float)
        if np.any(th < 0.0):
            raise ValueError("theta must be nonnegative")
        g = self.scenario.gamma_over_hbar
        lam = self.scenario.lam
        kind = self.scenario.kind
        f0 = 4.0 * g * g
        if kind == FieldKind.CONSTANT:
            out = f0 * np.ones_like(th)
        elif kind == FieldKind.OSCILLATORY:
            out = f0 * np.cos(lam * th) ** 2
        elif kind == FieldKind.POWER_LAW:
            out = f0 / (1.0 + lam * th) ** 4
        else:
            out = f0 * np.exp(-2.0 * lam * th)
        return out if out.shape else float(out)

    def fisher_derivative(self, theta):
        """dF/dtheta in closed form."""
        th = np.asarray(theta, dtype=float)
        g = self.scenario.gamma_over_hbar
        lam = self.scenario.lam
        kind = self.scenario.kind
        f0 = 4.0 * g * g
        if kind == FieldKind.CONSTANT:
            out = np.zeros_like(th)
        elif kind == FieldKind.OSCILLATORY:
            out = -f0 * lam * np.sin(2.0 * lam * th)
        elif kind == FieldKind.POWER_LAW:
            out = -4.0 * f0 * lam / (1.0 + lam * th) ** 5
        else:
            out = -2.0 * f0 * lam * np.exp(-2.0 * lam * th)
        return out if out.shape else float(out)

    def metric(self, theta):
        """g(theta) under the selected normalization."""
        f = self.fisher(theta)
        if self.normalization == Normalization.RAW_FISHER:
            return f
        return f / 4.0


def fisher_closed_form(scenario: ScenarioParams, theta):
    """F(theta) with the per-kind closed form (raw normalization)."""
    return FisherFunction(scenario).fisher(theta)


def fisher_numeric(
    path: ProbabilityPath,
    theta: float,
    h_step: Optional[float] = None,
    allow_fallback: bool = True,
) -> float:
    """Fisher information by central finite differences of the probability
    curve.

    Where a probability is within DEGENERACY_FLOOR of 0 or 1, the 1/p terms
    are singular; the analytic value 4*(w_H/hbar)^2 is substituted when
    allow_fallback is set, otherwise NearDegenerateError is raised.
    """
    if h_step is None:
        h_step = 1e-5 * max(1.0, abs(theta))
    if not theta > h_step > 0.0:
        raise ValueError("need theta > h_step > 0")
    pw, pperp = path.probabilities(theta)
    if min(pw, pperp) < DEGENERACY_FLOOR:
        if not allow_fallback:
            raise NearDegenerateError(
                f"probabilities ({pw:.3e}, {pperp:.3e}) too close to 0/1 at "
                f"theta={theta!r}"
            )
        scenario = path.scenario
        rate = float(scenario.profile.intensity(theta)) / scenario.hbar
        return 4.0 * rate * rate
    p_plus = path.probabilities(theta + h_step)[0]
    p_minus = path.probabilities(theta - h_step)[0]
    dp = (p_plus - p_minus) / (2.0 * h_step)
    return dp * dp * (1.0 / pw + 1.0 / pperp)


def metric_value(fisher: FisherFunction, theta):
    """g(theta) under the FisherFunction's normalization tag."""
    return fisher.metric(theta)


@dataclass(frozen=True)
class SmoothPath:
    """Path theta(xi) on [0, tau] given by callables (vectorized over
    numpy arrays).  theta_dot may be omitted; central differences with a
    relative step of 1e-6 are used then."""

    theta: Callable
    tau: float
    theta_dot: Optional[Callable] = None

    def __post_init__(self):
        if self.tau <= 0.0:
            raise ValueError("tau must be positive")

    def derivative(self, xi):
        if self.theta_dot is not None:
            return self.theta_dot(xi)
        h = 1e-6 * max(1.0, self.tau)
        return (self.theta(xi + h) - self.theta(xi - h)) / (2.0 * h)


@dataclass(frozen=True)
class SampledPath:
    """Path given by uniformly spaced samples (xi, theta); the spacing must
    be strictly increasing and uniform, and the panel count even."""

    xi: np.ndarray
    theta: np.ndarray

    def __post_init__(self):
        xi = np.asarray(self.xi, dtype=float)
        dxi = np.diff(xi)
        if len(xi) < 3 or len(xi) != len(np.asarray(self.theta)):
            raise ValueError("need matching xi/theta arrays with >= 3 samples")
        if np.any(dxi <= 0.0):
            raise ValueError("non-monotone sample spacing")
        if not np.allclose(dxi, dxi[0], rtol=1e-9, atol=0.0):
            raise ValueError("sample spacing must be uniform")
        if (len(xi) - 1) % 2:
            raise ValueError("need an even number of panels (odd sample count)")


def _simpson_weights(n_points: int, h: float) -> np.ndarray:
    w = np.ones(n_points)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (h / 3.0)


def _path_samples(fisher: FisherFunction, path, dxi):
    """(theta_dot, metric, weights) on the quadrature grid."""
    if isinstance(path, SmoothPath):
        tau = path.tau
        if dxi is None:
            dxi = 1e-4 * tau
        if dxi <= 0.0:
            raise ValueError("dxi must be positive")
        n = max(2, int(math.ceil(tau / dxi)))
        if n % 2:
            n += 1
        xs = np.linspace(0.0, tau, n + 1)
        td = np.asarray(path.derivative(xs), dtype=float)
        th = np.asarray(path.theta(xs), dtype=float)
        h = tau / n
    elif isinstance(path, SampledPath):
        xs = np.asarray(path.xi, dtype=float)
        th = np.asarray(path.theta, dtype=float)
        td = np.gradient(th, xs, edge_order=2)
        h = xs[1] - xs[0]
    else:
        raise TypeError("path must be a SmoothPath or SampledPath")
    g = np.asarray(fisher.metric(th), dtype=float)
    return td, g, _simpson_weights(len(td), h)


def entropic_length(fisher: FisherFunction, path, dxi=None) -> float:
    """Length integral of sqrt(theta_dot * g(theta) * theta_dot) along the
    path, by composite Simpson quadrature."""
    td, g, w = _path_samples(fisher, path, dxi)
    return float(np.sum(w * np.abs(td) * np.sqrt(g)))


def entropic_divergence(fisher: FisherFunction, path, dxi=None) -> float:
    """Divergence integral of theta_dot * g(theta) * theta_dot along the
    path; >= length^2 with equality iff the integrand is constant."""
    td, g, w = _path_samples(fisher, path, dxi)
    return float(np.sum(w * td * td * g))
