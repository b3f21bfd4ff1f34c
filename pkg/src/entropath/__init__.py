"""entropath: entropic speed, entropy production, and efficiency of
resonantly driven two-level evolutions on the Fisher-metric probability
manifold."""

from . import constants, dynamics, fisher, geodesics, kernels, scenarios
from .constants import PhysicalConstants, dimensionless, mksa
from .dynamics import (
    DrivingConfig,
    FieldKind,
    FieldProfile,
    MagneticField,
    PropagatorRun,
    PropagatorState,
    field_components,
    integrate_propagator,
    is_on_resonance,
    quantum_fisher_information,
    quantum_overlap,
    rotating_frame_hamiltonian,
    transition_probability,
)
from .errors import (
    ConfigError,
    EntropathError,
    NearDegenerateError,
    NoUnitPeakError,
    OffResonanceError,
    PathDomainError,
    StepTooLargeError,
    UnitarityDriftError,
)
from .fisher import (
    FisherFunction,
    Normalization,
    SampledPath,
    SmoothPath,
    entropic_divergence,
    entropic_length,
    fisher_closed_form,
    fisher_numeric,
    metric_value,
)
from .geodesics import (
    GeodesicForm,
    GeodesicSolution,
    RegionGrid,
    SampledGeodesic,
    crossover_root,
    efficiency_normalizer,
    entropic_efficiency,
    entropic_speed,
    entropy_production_rate,
    geodesic_closed_form,
    geodesic_rhs,
    path_functionals,
    region_mask,
    solve_geodesic_numeric,
    speed_ratio,
    unit_peak_rate,
)
from .scenarios import (
    ProbabilityPath,
    ScenarioParams,
    accumulated_phase,
    peak_parameter,
    success_probability,
    transverse_intensity,
)

__version__ = "0.1.0"
