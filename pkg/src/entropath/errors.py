"""Exception types raised by the entropath library."""


class EntropathError(Exception):
    """Base class for all library-specific errors."""


class OffResonanceError(EntropathError):
    """Propagation requested for a driving configuration that violates the
    resonance condition, without the explicit override flag."""


class UnitarityDriftError(EntropathError):
    """The propagator's norm drifted beyond tolerance (step too large)."""


class NoUnitPeakError(EntropathError):
    """The success probability never reaches one for these parameters."""


class NearDegenerateError(EntropathError):
    """Finite-difference Fisher evaluation attempted where a probability is
    numerically at 0 or 1 and the analytic fallback was disallowed."""


class PathDomainError(EntropathError):
    """Evaluation of a closed-form path outside its validity domain, or at a
    singular point of the metric."""


class StepTooLargeError(EntropathError):
    """The geodesic integrator's conserved-speed monitor exceeded tolerance
    away from any singular boundary."""


class ConfigError(EntropathError):
    """Invalid run configuration (CLI flags or config file)."""
