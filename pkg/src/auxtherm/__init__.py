"""Thermodynamics of atoms interacting through auxiliary Klein-Gordon fields.

A static pair potential written as a sum of Yukawa poles is represented by
one relativistic scalar field per pole.  The package evaluates the classical
partition function of the coupled system, the Bose-quantized field energy
and its heat capacity, and the oracles used to cross-check both.
"""

from .classical import (
    CriticalTemperatures,
    FieldChannel,
    Medium,
    ModeIndex,
    classical_energy,
    classical_log_partition,
    critical_temperature,
    default_k_grid,
    dispersion,
    log_mode_partition_exact,
    log_mode_partition_quadratic,
    mode_partition_exact,
    mode_partition_quadratic,
    renormalized_mass,
    single_mode_y,
)
from .errors import (
    AuxthermError,
    BoundaryError,
    BracketError,
    ConfigError,
    ConvergenceError,
    DomainError,
    SubcriticalError,
)
from .numerics import QuadratureSpec, bessel_i0, derivative, find_root, integrate_semi_infinite, ln_bessel_i0
from .potentials import PoleTerm, PotentialModel, extract_channels, v_fourier, v_real
from .quantum import (
    curve_sweep,
    f_curve,
    f_curve_slope,
    field_energy,
    heat_capacity_contrib,
)

__version__ = "0.1.0"

__all__ = [
    "AuxthermError",
    "BoundaryError",
    "BracketError",
    "ConfigError",
    "ConvergenceError",
    "CriticalTemperatures",
    "DomainError",
    "FieldChannel",
    "Medium",
    "ModeIndex",
    "PoleTerm",
    "PotentialModel",
    "QuadratureSpec",
    "SubcriticalError",
    "bessel_i0",
    "classical_energy",
    "classical_log_partition",
    "critical_temperature",
    "curve_sweep",
    "default_k_grid",
    "derivative",
    "dispersion",
    "extract_channels",
    "f_curve",
    "f_curve_slope",
    "field_energy",
    "find_root",
    "heat_capacity_contrib",
    "integrate_semi_infinite",
    "ln_bessel_i0",
    "log_mode_partition_exact",
    "log_mode_partition_quadratic",
    "mode_partition_exact",
    "mode_partition_quadratic",
    "renormalized_mass",
    "single_mode_y",
    "v_fourier",
    "v_real",
]
