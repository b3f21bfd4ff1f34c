"""Physical constants used by the field/unit conversions.

Two modes are supported: a dimensionless mode (hbar = 1, couplings are
angular frequencies) used throughout the analysis, and an MKSA mode used
only to convert field amplitudes to tesla.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    """Fundamental constants; derived quantities are exposed as properties
    so the defining relations hold to machine precision by construction."""

    hbar: float  # reduced Planck constant, J*s
    electron_mass: float  # kg
    elementary_charge: float  # C
    light_speed: float  # m/s
    dimensionless_mode: bool = False

    def __post_init__(self):
        for name in ("hbar", "electron_mass", "elementary_charge", "light_speed"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")

    @property
    def h(self) -> float:
        """Planck constant, h = 2*pi*hbar."""
        return 2.0 * math.pi * self.hbar

    @property
    def mu_bohr(self) -> float:
        """Bohr magneton, e*hbar / (2*m*c)."""
        return (
            self.elementary_charge
            * self.hbar
            / (2.0 * self.electron_mass * self.light_speed)
        )


def dimensionless() -> PhysicalConstants:
    """Constants with hbar = 1; the auxiliary constants are chosen so the
    Bohr magneton is exactly 1 as well."""
    return PhysicalConstants(
        hbar=1.0,
        electron_mass=1.0,
        elementary_charge=1.0,
        light_speed=0.5,
        dimensionless_mode=True,
    )


def mksa() -> PhysicalConstants:
    """CODATA-2018 values in MKSA units."""
    return PhysicalConstants(
        hbar=1.054571817e-34,
        electron_mass=9.1093837015e-31,
        elementary_charge=1.602176634e-19,
        light_speed=2.99792458e8,
        dimensionless_mode=False,
    )
