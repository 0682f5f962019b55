"""Numerical toolkit for the angular EPR criterion.

Models conditional angle measurements with aperture pairs under perfect
angle anticorrelation: aperture densities on the circle, their periodic
convolution, zero-phase conditional wavefunctions, angle-to-OAM transforms,
truncated conditional variances with convergence classification, and the
criterion comparing measured against inferred OAM conditional variances.
"""

from .aperture import (
    GAUSS,
    RECT,
    SHAPES,
    TSG,
    AngularDensity,
    ApertureSpec,
    UncertaintyReport,
    angle_moments,
    check_uncertainty,
    density_at,
    make_aperture,
    phi_grid,
    sample,
    wrap_angle,
)
from .correlate import (
    ConditionalWavefunction,
    conditional_density_for_pair,
    conditional_wavefunction,
    convolve_periodic,
    rect_conditional_density,
)
from .criterion import (
    PERFECT,
    TABLE,
    CriterionReport,
    OamCorrelationModel,
    evaluate,
    lhs_average,
    rhs_average,
)
from .oam import (
    ANALYTIC_RECT,
    CONVERGED,
    GAUSS_APPROX,
    LOG_DIVERGENT,
    NUMERIC,
    UNDETERMINED,
    OamSpectrum,
    VarianceSeries,
    classify_convergence,
    conditional_variance,
    gauss_amplitude_approx,
    gauss_density_transform_analytic,
    gauss_spectrum_approx,
    loglinear_fit,
    phase_modulated_variance,
    rect_amplitude_analytic,
    rect_spectrum_analytic,
    transform_numeric,
    truncate_spectrum,
    variance_series,
    variance_series_from_spectrum,
)

__version__ = "0.1.0"
