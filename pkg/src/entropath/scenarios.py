"""Driving scenarios and their success/failure probability curves.

On resonance with orthogonal source and target, the success probability is
p(theta) = sin^2(g(theta)) where g is the accumulated phase, the time
integral of the transverse rate w_H/hbar.  All four envelopes admit g in
closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import FieldKind, FieldProfile
from .errors import NoUnitPeakError

#: relative tolerance for recognizing the unit-peak coupling ratio pi/2
_KAPPA_RTOL = 1e-12


@dataclass(frozen=True)
class ScenarioParams:
    """A field profile together with the hbar it is evaluated against."""

    profile: FieldProfile
    hbar: float = 1.0

    def __post_init__(self):
        if self.hbar <= 0.0:
            raise ValueError("hbar must be positive")

    @property
    def kind(self) -> FieldKind:
        return self.profile.kind

    @property
    def lam(self) -> float:
        return self.profile.lam

    @property
    def gamma_over_hbar(self) -> float:
        return self.profile.gamma / self.hbar

    def kappa(self) -> float:
        """Coupling ratio gamma/(hbar*lam); undefined for the constant kind."""
        if self.kind == FieldKind.CONSTANT:
            raise ValueError("kappa is undefined for the constant profile")
        return self.profile.gamma / (self.hbar * self.lam)

    @classmethod
    def unit_peak(cls, kind: FieldKind, lam: float, hbar: float = 1.0) -> "ScenarioParams":
        """Scenario with gamma = (h/4)*lam, i.e. kappa = pi/2: the phase
        supremum of the decaying kinds is exactly pi/2 and the oscillatory
        peak sits at lam*theta = pi/2."""
        gamma = 0.5 * math.pi * hbar * lam
        return cls(profile=FieldProfile(kind=kind, gamma=gamma, lam=lam), hbar=hbar)


def transverse_intensity(scenario: ScenarioParams, t):
    """w_H(t) in the profile's units."""
    return scenario.profile.intensity(t)


def accumulated_phase(scenario: ScenarioParams, theta):
    """g(theta) = integral of w_H/hbar from 0 to theta, in closed form.

    Accepts scalars or arrays; theta must be nonnegative.
    """
    th = np.asarray(theta, dtype=float)
    if np.any(th < 0.0):
        raise ValueError("theta must be nonnegative")
    g = scenario.gamma_over_hbar
    lam = scenario.lam
    kind = scenario.kind
    if kind == FieldKind.CONSTANT:
        out = g * th
    elif kind == FieldKind.OSCILLATORY:
        out = (g / lam) * np.sin(lam * th)
    elif kind == FieldKind.POWER_LAW:
        out = (g / lam) * (1.0 - 1.0 / (1.0 + lam * th))
    else:
        out = (g / lam) * (1.0 - np.exp(-lam * th))
    return out if out.shape else float(out)


def success_probability(scenario: ScenarioParams, theta):
    """(p_success, p_failure) = (sin^2 g, 1 - sin^2 g).

    The pair sums to one exactly; the failure entry equals cos^2 g to one
    ulp.
    """
    pw = np.sin(accumulated_phase(scenario, theta)) ** 2
    if np.ndim(pw):
        return pw, 1.0 - pw
    pw = float(pw)
    return pw, 1.0 - pw


@dataclass(frozen=True)
class ProbabilityPath:
    """Map theta -> (success, failure) probabilities for one scenario."""

    scenario: ScenarioParams

    def probabilities(self, theta):
        return success_probability(self.scenario, theta)

    def success(self, theta):
        return self.probabilities(theta)[0]


def peak_parameter(scenario: ScenarioParams) -> float:
    """Smallest theta > 0 with unit success probability.

    Constant: pi*hbar/(2*gamma).  Oscillatory (needs kappa >= pi/2):
    arcsin((pi/2)/kappa)/lam.  Decaying kinds: finite for kappa > pi/2,
    math.inf for kappa == pi/2 (the supremum 1 is approached but never
    attained), NoUnitPeakError for kappa < pi/2.
    """
    kind = scenario.kind
    if kind == FieldKind.CONSTANT:
        return math.pi / (2.0 * scenario.gamma_over_hbar)

    kappa = scenario.kappa()
    target = 0.5 * math.pi
    if kind == FieldKind.OSCILLATORY:
        if kappa < target * (1.0 - _KAPPA_RTOL):
            raise NoUnitPeakError(
                f"phase peak {kappa:.6g} < pi/2; success probability never reaches 1"
            )
        return math.asin(min(1.0, target / kappa)) / scenario.lam

    # decaying kinds: g increases monotonically to the supremum kappa
    if abs(kappa - target) <= _KAPPA_RTOL * target:
        return math.inf
    if kappa < target:
        raise NoUnitPeakError(
            f"phase supremum {kappa:.6g} < pi/2; success probability never reaches 1"
        )
    frac = target / kappa  # in (0, 1)
    if kind == FieldKind.POWER_LAW:
        return (1.0 / (1.0 - frac) - 1.0) / scenario.lam
    return -math.log(1.0 - frac) / scenario.lam
