"""Relativistic point potentials on a line: scattering, gap states, vacuum energy.

A spin-1/2 particle of mass m moves on the line through one or two
delta-function potentials, each carrying an electrostatic strength q and a
mass-spike strength lam.  The package provides

- ``core``: gamma-matrix representation, dispersion, free spinor bases;
- ``matching``: the 2x2 matrix connecting spinor values across a delta and
  transfer-matrix composition for arbitrary arrays;
- ``scattering``: transmission/reflection amplitudes (closed forms for the
  canonical layouts plus a generic transfer-matrix route) for electrons
  and positrons;
- ``spectrum``: bound states in the mass gap, spectral residuals,
  region-count maps over coupling planes and their boundary curves;
- ``casimir``: perfectly reflecting (unitary) couplings and the vacuum
  interaction energy of a mirror pair;
- ``emit`` / ``plots`` / ``cli``: deterministic CSV/JSON reports with
  optional rendered figures.
"""

from .casimir import (
    CasimirResult,
    NonUnitaryCouplingError,
    UnitaryCase,
    classify_unitary,
    mode_sum_oracle,
    spectral_function_h,
    vacuum_energy,
)
from .core import GAMMA, GammaRep, ParticleKind, dispersion, u_plus, v_plus
from .emit import emit, fmt_float
from .matching import (
    Coupling,
    DeltaConfig,
    compose_transfer,
    entire_cs,
    free_transfer,
    t_delta,
)
from .scattering import (
    NumericalDegeneracyError,
    ScatteringData,
    double_electric_amplitudes,
    double_mass_amplitudes,
    electric_denominator,
    generic_double_amplitudes,
    mass_denominator,
    single_delta_amplitudes,
    unitarity_defect,
)
from .spectrum import (
    BoundState,
    DegenerateCouplingError,
    RegionMap,
    THREADS_ENV_VAR,
    bound_state_wavefunction,
    boundary_curve,
    count_map,
    electric_spectral_residual,
    electric_zero_mode_residual,
    find_bound_states,
    mass_spectral_residual,
    sample_boundary_curve,
    single_delta_kappas,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "GAMMA",
    "GammaRep",
    "ParticleKind",
    "dispersion",
    "u_plus",
    "v_plus",
    "Coupling",
    "DeltaConfig",
    "entire_cs",
    "t_delta",
    "free_transfer",
    "compose_transfer",
    "ScatteringData",
    "NumericalDegeneracyError",
    "single_delta_amplitudes",
    "double_electric_amplitudes",
    "double_mass_amplitudes",
    "generic_double_amplitudes",
    "electric_denominator",
    "mass_denominator",
    "unitarity_defect",
    "BoundState",
    "RegionMap",
    "DegenerateCouplingError",
    "THREADS_ENV_VAR",
    "single_delta_kappas",
    "electric_spectral_residual",
    "mass_spectral_residual",
    "electric_zero_mode_residual",
    "find_bound_states",
    "bound_state_wavefunction",
    "boundary_curve",
    "sample_boundary_curve",
    "count_map",
    "UnitaryCase",
    "NonUnitaryCouplingError",
    "CasimirResult",
    "classify_unitary",
    "spectral_function_h",
    "vacuum_energy",
    "mode_sum_oracle",
    "emit",
    "fmt_float",
]
