"""Explicit four-dimensional two-point quadrature bodies (Neumann ovaloids).

Numerically realizes the boundary-integral conformal map of the generating
planar domain, solves the parameter constraint that concentrates the body's
quadrature distribution on two points, and verifies the resulting identity
against independent volume quadrature.
"""

__version__ = "0.1.0"

from .contour import ContourSamples, ContourSpec, contour_integral, laurent_coefficients, sample_contour
from .conformal import (
    ProfileCurve,
    TaylorSeries,
    cauchy_transform,
    f_derivative,
    f_prime_at_zero,
    profile_curve,
    taylor_series,
)
from .schwarz import OvaloidParams, ResidueKernelData, g_eval, residue_kernel, schwarz_on_circle, sqrt_g
from .solver import (
    SolveReport,
    calibrate_scale,
    derivative_suite,
    expansion_plane_fit,
    quadrature_weight,
    rescaled_residue_functional,
    residue_functional,
    solve_a_for_b,
    solve_ovaloid,
)
from .verify import HarmonicTestFunction, VerificationReport, quadrature_identity_check, reduce_harmonic, volume_integral

__all__ = [
    "__version__",
    "ContourSamples",
    "ContourSpec",
    "HarmonicTestFunction",
    "OvaloidParams",
    "ProfileCurve",
    "ResidueKernelData",
    "SolveReport",
    "TaylorSeries",
    "VerificationReport",
    "calibrate_scale",
    "cauchy_transform",
    "contour_integral",
    "derivative_suite",
    "expansion_plane_fit",
    "f_derivative",
    "f_prime_at_zero",
    "g_eval",
    "laurent_coefficients",
    "profile_curve",
    "quadrature_identity_check",
    "quadrature_weight",
    "reduce_harmonic",
    "rescaled_residue_functional",
    "residue_functional",
    "residue_kernel",
    "sample_contour",
    "schwarz_on_circle",
    "solve_a_for_b",
    "solve_ovaloid",
    "sqrt_g",
    "taylor_series",
    "volume_integral",
]
