"""Resonantly driven two-level dynamics.

A spin-1/2 particle in a rotating magnetic field is described in the
{target, orthogonal} basis by the Hamiltonian matrix

    [[ Omega(t),  w(t)      ],
     [ w*(t),    -Omega(t) ]]

with a real longitudinal field Omega(t) and a complex transverse field
w(t) = w_H(t) * exp(i*phi(t)).  The transverse intensity w_H(t) follows one
of four envelopes (constant, oscillatory, power-law decay, exponential
decay); the phase advances linearly, phi(t) = omega0*t, and the resonance
condition dphi/dt = -(2/hbar)*Omega cancels the longitudinal term in the
rotating frame.  The propagator is parametrized by two complex amplitudes
(alpha, beta) with |alpha|^2 + |beta|^2 = 1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from . import kernels
from .constants import PhysicalConstants
from .errors import OffResonanceError, UnitarityDriftError

#: tolerance on the propagator norm before the run is rejected
UNITARITY_TOL = 1e-6

#: relative tolerance used by the resonance check
_RESONANCE_RTOL = 1e-12


class FieldKind(enum.IntEnum):
    """Envelope of the transverse driving intensity."""

    CONSTANT = kernels.KIND_CONSTANT
    OSCILLATORY = kernels.KIND_OSCILLATORY
    POWER_LAW = kernels.KIND_POWER_LAW
    EXPONENTIAL = kernels.KIND_EXPONENTIAL


@dataclass(frozen=True)
class FieldProfile:
    """Transverse driving intensity w_H(t).

    gamma is the coupling amplitude (energy units; an angular frequency
    when hbar = 1) and lam the modulation rate of the non-constant kinds.
    """

    kind: FieldKind
    gamma: float
    lam: float = 0.0

    def __post_init__(self):
        if self.gamma <= 0.0:
            raise ValueError("gamma must be positive")
        if self.kind != FieldKind.CONSTANT and self.lam <= 0.0:
            raise ValueError("lam must be positive for non-constant profiles")

    def intensity(self, t):
        """w_H(t); accepts scalars or numpy arrays."""
        if self.kind == FieldKind.CONSTANT:
            return self.gamma * np.ones_like(np.asarray(t, dtype=float))
        if self.kind == FieldKind.OSCILLATORY:
            return self.gamma * np.cos(self.lam * t)
        if self.kind == FieldKind.POWER_LAW:
            denom = 1.0 + self.lam * np.asarray(t, dtype=float)
            if np.any(denom <= 0.0):
                raise ValueError("power-law envelope undefined where 1 + lam*t <= 0")
            return self.gamma / denom**2
        return self.gamma * np.exp(-self.lam * np.asarray(t, dtype=float))


@dataclass(frozen=True)
class DrivingConfig:
    """Phase and longitudinal-field schedule.

    The default schedule is phi(t) = omega0*t with omega0 < 0 and
    Omega = -(hbar/2)*omega0, which satisfies the resonance condition
    identically.  Either piece can be overridden to represent detuned
    drives (the propagator then refuses to run unless explicitly allowed).
    """

    omega0: float
    phase_rate_override: Optional[float] = None
    longitudinal_override: Optional[float] = None  # energy units

    def __post_init__(self):
        if not self.omega0 < 0.0:
            raise ValueError("omega0 must be strictly negative")

    def phase_rate(self) -> float:
        """d(phi)/dt in rad per unit time."""
        if self.phase_rate_override is not None:
            return self.phase_rate_override
        return self.omega0

    def phase(self, t):
        """phi(t) = phase_rate * t."""
        return self.phase_rate() * t

    def longitudinal(self, constants: PhysicalConstants) -> float:
        """Omega, the longitudinal field in energy units."""
        if self.longitudinal_override is not None:
            return self.longitudinal_override
        return -0.5 * constants.hbar * self.omega0


@dataclass(frozen=True)
class PropagatorState:
    """Propagator amplitudes (alpha, beta) at one instant."""

    alpha: complex
    beta: complex
    time: float

    @property
    def norm_error(self) -> float:
        return abs(abs(self.alpha) ** 2 + abs(self.beta) ** 2 - 1.0)


@dataclass(frozen=True)
class MagneticField:
    """Laboratory-frame field components and magnitudes (tesla, or
    normalized units in dimensionless mode)."""

    bx: float
    by: float
    bz: float
    b_perp: float
    b_par: float


def field_components(
    profile: FieldProfile,
    config: DrivingConfig,
    constants: PhysicalConstants,
    t: float,
) -> MagneticField:
    """Magnetic field at time t.

    The transverse magnitude is B_perp = w_H(t)/mu_Bohr and the
    longitudinal magnitude B_par = |Omega|/mu_Bohr; the components rotate
    as bx = B_perp*cos(phi), by = -B_perp*sin(phi).  In dimensionless mode
    the normalization gamma/mu_Bohr = 1 is used instead.
    """
    if t < 0.0:
        raise ValueError("t must be nonnegative")
    scale = profile.gamma if constants.dimensionless_mode else constants.mu_bohr
    b_perp = float(profile.intensity(t)) / scale
    ph = config.phase(t)
    omega_long = config.longitudinal(constants)
    return MagneticField(
        bx=b_perp * math.cos(ph),
        by=-b_perp * math.sin(ph),
        bz=-omega_long / scale,
        b_perp=abs(b_perp),
        b_par=abs(omega_long) / scale,
    )


def is_on_resonance(config: DrivingConfig, constants: PhysicalConstants) -> bool:
    """True iff dphi/dt + (2/hbar)*Omega == 0 (within round-off)."""
    rate = config.phase_rate()
    long_rate = 2.0 * config.longitudinal(constants) / constants.hbar
    residual = rate + long_rate
    scale = max(1.0, abs(rate), abs(long_rate))
    return abs(residual) <= _RESONANCE_RTOL * scale


def rotating_frame_hamiltonian(
    profile: FieldProfile,
    config: DrivingConfig,
    constants: PhysicalConstants,
    t: float,
) -> np.ndarray:
    """2x2 Hermitian Hamiltonian in the frame co-rotating by phi(t).

    H' = [Omega + (hbar/2)*dphi/dt]*sigma_z + w_H(t)*sigma_x; on resonance
    the sigma_z coefficient cancels exactly.
    """
    if t < 0.0:
        raise ValueError("t must be nonnegative")
    coef_z = config.longitudinal(constants) + 0.5 * constants.hbar * config.phase_rate()
    coef_x = float(profile.intensity(t))
    return np.array([[coef_z, coef_x], [coef_x, -coef_z]], dtype=complex)


class PropagatorRun:
    """Sampled propagator trajectory: a sequence of PropagatorState backed
    by arrays, with the peak unitarity drift of the full run."""

    def __init__(self, times: np.ndarray, alpha: np.ndarray, beta: np.ndarray,
                 max_drift: float):
        self.times = times
        self.alpha = alpha
        self.beta = beta
        self.max_drift = max_drift

    def __len__(self) -> int:
        return len(self.times)

    def __getitem__(self, i: int) -> PropagatorState:
        return PropagatorState(
            alpha=complex(self.alpha[i]),
            beta=complex(self.beta[i]),
            time=float(self.times[i]),
        )

    def __iter__(self) -> Iterator[PropagatorState]:
        for i in range(len(self)):
            yield self[i]

    def success_probabilities(self) -> np.ndarray:
        """|beta(t)|^2 for every sample (orthogonal source and target)."""
        return np.abs(self.beta) ** 2


def integrate_propagator(
    profile: FieldProfile,
    config: DrivingConfig,
    constants: PhysicalConstants,
    t_max: float,
    dt: float,
    record_every: int = 1,
    allow_off_resonance: bool = False,
) -> PropagatorRun:
    """Integrate the propagator amplitudes with fixed-step classical RK4.

    Solves i*hbar*d(alpha)/dt = Omega*alpha - w*conj(beta) and
    i*hbar*d(beta)/dt = w*conj(alpha) + Omega*beta from (alpha, beta) =
    (1, 0), with w(t) the full complex transverse field.  No
    renormalization is applied; a run whose norm drifts beyond
    UNITARITY_TOL raises UnitarityDriftError (the step is too large).
    """
    if t_max <= 0.0:
        raise ValueError("t_max must be positive")
    if not 0.0 < dt <= t_max:
        raise ValueError("dt must satisfy 0 < dt <= t_max")
    if record_every < 1:
        raise ValueError("record_every must be >= 1")
    if not allow_off_resonance and not is_on_resonance(config, constants):
        raise OffResonanceError(
            "driving configuration is off resonance; pass "
            "allow_off_resonance=True to integrate anyway"
        )
    times, alpha, beta, max_drift = kernels.propagator_rk4(
        int(profile.kind),
        profile.gamma / constants.hbar,
        profile.lam,
        config.phase_rate(),
        config.longitudinal(constants) / constants.hbar,
        t_max,
        dt,
        record_every,
    )
    if max_drift > UNITARITY_TOL:
        raise UnitarityDriftError(
            f"unitarity drift {max_drift:.3e} exceeds {UNITARITY_TOL:.1e}; "
            "reduce dt"
        )
    return PropagatorRun(times, alpha, beta, max_drift)


def transition_probability(state: PropagatorState, overlap: float) -> float:
    """Probability of reaching the target from a source with the given
    overlap x = <target|source>:

        |alpha|^2 x^2 + |beta|^2 (1 - x^2)
            + (alpha*conj(beta) + conj(alpha)*beta) * x * sqrt(1 - x^2)
    """
    if not 0.0 <= overlap <= 1.0:
        raise ValueError("overlap must lie in [0, 1]")
    x = overlap
    a, b = state.alpha, state.beta
    pa = abs(a) ** 2
    pb = abs(b) ** 2
    if x == 0.0:
        return pb
    if x == 1.0:
        return pa
    cross = (a * b.conjugate() + a.conjugate() * b).real
    p = pa * x * x + pb * (1.0 - x * x) + cross * x * math.sqrt(1.0 - x * x)
    return min(1.0, max(0.0, p))


def quantum_overlap(b_perp: float, b_par: float) -> float:
    """Source/target overlap induced by the field magnitudes:
    x = (B_par/B_perp) / sqrt(1 + (B_par/B_perp)^2), in [0, 1)."""
    if b_perp <= 0.0:
        raise ValueError("b_perp must be positive")
    if b_par < 0.0:
        raise ValueError("b_par must be nonnegative")
    r = b_par / b_perp
    return r / math.sqrt(1.0 + r * r)


def quantum_fisher_information(
    profile: FieldProfile, constants: PhysicalConstants, theta: float
) -> float:
    """Fisher information of the rotating-frame evolution at parameter
    theta, from the dispersion of the generator on the initial state:
    (4/hbar^2) * w_H(theta)^2 (the generator's mean vanishes there)."""
    if theta < 0.0:
        raise ValueError("theta must be nonnegative")
    rate = float(profile.intensity(theta)) / constants.hbar
    return 4.0 * rate * rate
