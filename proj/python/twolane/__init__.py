"""Two-lane optimal-velocity model with lateral coupling.

Thin Python layer over the C++ core: model evaluation, linear stability,
the MKdV kink solution and the two-lane ring simulator.
"""

from ._core import (  # noqa: F401
    CoefficientSensitivity,
    ConfigError,
    GateReading,
    HeadwayDelta,
    MkdvCoefficients,
    ModelParams,
    NeighborMode,
    NeighborView,
    OperatingPoint,
    PerturbationSpec,
    RingConfig,
    RunManifest,
    Scheme,
    SimOptions,
    SimulationError,
    Stability,
    StabilityReport,
    Trajectory,
    acceleration,
    analyze,
    classify,
    coexisting_curve,
    kink_headway,
    lateral_optimal_velocity,
    lateral_velocity_difference,
    long_wave_coefficients,
    measure_amplitude,
    mkdv_coefficients,
    neutral_sensitivity,
    optimal_velocity,
    ov_derivative,
    parse_config,
    reference_ring,
    serialize_config,
    simulate,
    soliton_amplitude,
    stability_surface,
    standard_mkdv_residual,
)

__all__ = [name for name in dir() if not name.startswith("_")]
