"""Steady-state thermodynamics of two driven oscillators in common baths."""

from .quadrature import IntegralResult, QuadratureConfig, integrate_real_line
from .response import (
    MachineParams,
    ResponseMatrix,
    ResponsePoleError,
    chi_eff_imag,
    chi_imag_eigenvalues,
    denominator,
    response_matrix,
)
from .spectral import (
    DrudeLorentz,
    SpectralModel,
    StrictOhmic,
    coth_stable,
    damping_kernel_freq,
    spectral_density,
)
from .observables import (
    QuadratureConvergenceError,
    SyncReport,
    ThermoReport,
    efficiency,
    entropy_rate,
    heat_currents,
    power_components,
    power_fluctuations,
    sync_report,
    thermal_kernel,
    thermo_report,
    tur_quantifiers,
)
from .asymptotics import (
    AsymptoticCoeffs,
    CertificateReport,
    adiabatic_coefficients,
    diabatic_coefficients,
    diabatic_fluctuation,
    tur_certificate,
)
from .sweep import SweepResult, SweepSpec, export, find_threshold_frequency, run_sweep

__version__ = "0.1.0"
