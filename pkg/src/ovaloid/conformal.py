"""The conformal map of the generating planar domain via the Cauchy transform.

f(zeta) = (1/2*pi*i) oint sqrt(g(w)) / (w - zeta) dw

maps the unit disk onto the half-profile domain whose rotation produces the
four-dimensional body.  The contour is inflated slightly beyond the unit
circle so boundary values of f are reached without integrating through the
Cauchy pole; interior evaluation for area quadrature goes through a Taylor
series extracted from the same contour samples.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .contour import ContourSpec, ContourSamples, laurent_coefficients, sample_contour
from .errors import DomainError
from .schwarz import OvaloidParams, sqrt_g

# Evaluation this close to the contour is dominated by the Cauchy pole.
CONTOUR_CLEARANCE = 1e-6
COEFF_IMAG_TOL = 1e-12
DEFAULT_SERIES_ORDER = 64
DEFAULT_SERIES_TOL = 1e-12


@dataclass(frozen=True)
class TaylorSeries:
    """Real Taylor coefficients of the map at 0 plus a boundary tail bound.

    coefficients[n] multiplies zeta^n; truncation_error bounds the modulus of
    the discarded tail on the unit circle.
    """

    coefficients: np.ndarray
    truncation_error: float

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, z):
        """Evaluate the series at z (scalar or array, real or complex)."""
        return np.polynomial.polynomial.polyval(np.asarray(z, dtype=complex), self.coefficients)

    def derivative(self, z):
        """Evaluate the series derivative at z."""
        c = self.coefficients
        dc = c[1:] * np.arange(1, len(c))
        return np.polynomial.polynomial.polyval(np.asarray(z, dtype=complex), dc)


@dataclass(frozen=True)
class ProfileCurve:
    """Boundary samples (X_k, Y_k) = f(e^{i theta_k}) of the half-profile domain."""

    points: np.ndarray
    params: OvaloidParams

    @property
    def theta(self) -> np.ndarray:
        n = len(self.points)
        return 2.0 * np.pi * np.arange(n) / n

    def x_extent(self) -> float:
        return float(np.max(np.abs(self.points[:, 0])))

    def y_extent(self) -> float:
        return float(np.max(np.abs(self.points[:, 1])))

    def winding_number(self) -> int:
        """Winding of the closed polygon about the origin."""
        z = self.points[:, 0] + 1j * self.points[:, 1]
        ang = np.angle(np.roll(z, -1) / z)
        return int(round(float(np.sum(ang)) / (2.0 * np.pi)))

    def self_intersects(self) -> bool:
        return polygon_self_intersects(self.points)

    def is_simple_closed(self) -> bool:
        return (not self.self_intersects()) and self.winding_number() == 1


def _transform_values(p: OvaloidParams, spec: ContourSpec, zeta: np.ndarray, order: int) -> np.ndarray:
    """Shared kernel for f and its derivatives: mean of sqrt_g * w / (w-zeta)^(order+1)."""
    r = spec.radius
    mod = np.abs(zeta)
    if np.any(np.abs(mod - r) < CONTOUR_CLEARANCE):
        raise DomainError(
            f"evaluation point within {CONTOUR_CLEARANCE} of the contour |w|={r}; "
            "increase the contour radius"
        )
    if np.any(mod > r):
        raise DomainError(f"evaluation requires |zeta| < contour radius {r}")
    samples = sample_contour(spec, lambda w: sqrt_g(p, w))
    w = spec.nodes()
    fac = {0: 1.0, 1: 1.0, 2: 2.0}[order]  # order!
    kern = samples.values * w
    out = fac * np.mean(kern[None, :] / (w[None, :] - zeta[:, None]) ** (order + 1), axis=1)
    return out


def cauchy_transform(p: OvaloidParams, spec: ContourSpec, zeta):
    """The map f at zeta (scalar or array), |zeta| < spec.radius.

    Boundary points |zeta| = 1 are legitimate: the inflated contour keeps the
    Cauchy pole strictly inside, and the integral continues f analytically up
    to the contour.
    """
    zarr = np.atleast_1d(np.asarray(zeta, dtype=complex))
    out = _transform_values(p, spec, zarr, 0)
    return out if np.ndim(zeta) else complex(out[0])


def f_derivative(p: OvaloidParams, spec: ContourSpec, zeta, order: int = 1):
    """First or second derivative of the map at zeta."""
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order}")
    zarr = np.atleast_1d(np.asarray(zeta, dtype=complex))
    out = _transform_values(p, spec, zarr, order)
    return out if np.ndim(zeta) else complex(out[0])


def f_prime_at_zero(p: OvaloidParams, spec: ContourSpec) -> float:
    """f'(0); must be positive for the normalized map (sign check of the branch)."""
    v = f_derivative(p, spec, 0.0, 1)
    return float(np.real(v))


def taylor_series(
    p: OvaloidParams,
    spec: ContourSpec,
    order: int | None = None,
    tol: float = DEFAULT_SERIES_TOL,
) -> TaylorSeries:
    """Taylor coefficients of the map from Laurent analysis of the contour samples.

    order=None starts at DEFAULT_SERIES_ORDER and doubles until the boundary
    tail bound drops below tol or the order reaches node_count/4; a tail still
    above tol is reported via a warning, not an error.  Coefficients are
    validated against the structural constraints of the normalized map
    (f(0)=0, f'(0)>0, odd, real) and stored real.
    """
    n_half = spec.node_count // 2
    samples = sample_contour(spec, lambda w: sqrt_g(p, w))
    all_coeffs = laurent_coefficients(samples, 0, n_half - 1)

    auto = order is None
    M = DEFAULT_SERIES_ORDER if auto else order
    if not M < n_half:
        raise ValueError(f"series order {M} must be below node_count/2 = {n_half}")
    cap = spec.node_count // 4
    while True:
        tail = float(np.sum(np.abs(all_coeffs[M + 1 :])))
        if not auto or tail <= tol or M >= cap:
            break
        M = min(2 * M, cap)
    if tail > tol:
        warnings.warn(
            f"series tail bound {tail:.3e} above tolerance {tol:.1e} at order {M}",
            stacklevel=2,
        )

    c = all_coeffs[: M + 1]
    worst_imag = float(np.max(np.abs(c.imag)))
    if worst_imag > COEFF_IMAG_TOL:
        raise ValueError(
            f"coefficient imaginary parts reach {worst_imag:.3e}; branch inconsistency"
        )
    c = c.real.copy()
    if abs(c[0]) > COEFF_IMAG_TOL:
        raise ValueError(f"map does not vanish at 0: c0={c[0]:.3e}")
    even = float(np.max(np.abs(c[2::2]))) if len(c) > 2 else 0.0
    if even > COEFF_IMAG_TOL:
        raise ValueError(f"even coefficients reach {even:.3e}; map not odd")
    if not c[1] > 0:
        raise ValueError(
            f"f'(0)={c[1]:.3e} <= 0: flip the global square-root sign, not per-point signs"
        )
    return TaylorSeries(coefficients=c, truncation_error=tail)


def profile_curve(p: OvaloidParams, spec: ContourSpec, n_points: int = 256) -> ProfileCurve:
    """Sample the image of the unit circle; the closed boundary of the half profile.

    Symmetry of the sampled polygon about both axes is validated to 1e-10
    (exact index pairing; X-reflection needs even n_points).
    """
    if n_points < 16:
        raise ValueError(f"n_points must be >= 16, got {n_points}")
    theta = 2.0 * np.pi * np.arange(n_points) / n_points
    z = np.exp(1j * theta)
    f = cauchy_transform(p, spec, z)
    pts = np.column_stack([f.real, f.imag])

    idx_neg = (-np.arange(n_points)) % n_points
    conj_residual = float(np.max(np.abs(f - np.conj(f[idx_neg]))))
    if conj_residual > 1e-10:
        raise ValueError(f"curve not symmetric about the X axis: residual {conj_residual:.3e}")
    if n_points % 2 == 0:
        idx_opp = (idx_neg + n_points // 2) % n_points
        opp = f[idx_opp]
        x_residual = float(np.max(np.abs(f - (-np.conj(opp)))))
        if x_residual > 1e-10:
            raise ValueError(f"curve not symmetric about the Y axis: residual {x_residual:.3e}")
    return ProfileCurve(points=pts, params=p)


def polygon_self_intersects(points: np.ndarray) -> bool:
    """Proper-crossing test over all non-adjacent segment pairs of a closed polygon.

    O(n^2) pairwise orientation test; adequate for the few hundred boundary
    samples used for univalence flags.
    """
    P = np.asarray(points, dtype=float)
    n = len(P)
    if n < 4:
        return False
    D = np.roll(P, -1, axis=0) - P

    def cross(u, v):
        return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]

    A = P[:, None, :]
    dA = D[:, None, :]
    B = P[None, :, :]
    dB = D[None, :, :]
    s1 = cross(dA, B - A)
    s2 = cross(dA, B + dB - A)
    t1 = cross(dB, A - B)
    t2 = cross(dB, A + dA - B)
    proper = (s1 * s2 < 0) & (t1 * t2 < 0)

    idx = np.arange(n)
    mask = np.ones((n, n), dtype=bool)
    mask[idx, idx] = False
    mask[idx, (idx + 1) % n] = False
    mask[(idx + 1) % n, idx] = False
    return bool(np.any(proper & mask))
