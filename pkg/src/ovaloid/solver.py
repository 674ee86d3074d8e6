"""Parameter solving: the vanishing-residue constraint tying a to b, scale
calibration placing the foci, the quadrature weight, and origin diagnostics.

A candidate body is a two-point quadrature domain exactly when the residue of
g*f' at the focus preimage b vanishes.  That residue is a 1-D functional
F(a, b) evaluated by contour integration; its root a(b) is found by
bracketing bisection with secant polish.  The scale C is then fixed by
f(b) = epsilon and the quadrature weight follows in closed form from the
kernel value and f'(b).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .contour import ContourSpec, DEFAULT_NODE_COUNT, clamped_radius, sample_contour, spec_for_params
from .conformal import cauchy_transform, f_derivative, profile_curve
from .errors import CalibrationError, DomainError, SolverError
from .schwarz import OvaloidParams, residue_kernel, sqrt_g

# F is real by symmetry; a larger imaginary part signals a branch bug.
F_IMAG_TOL = 1e-11
DEFAULT_B_MAX = 0.6
# Hard ceiling: beyond this the map is far outside the validated family.
SUPPORTED_B_MAX = 0.9
DEFAULT_BRACKET_GAIN = 10.0
DEFAULT_SOLVE_TOL = 1e-12

# Fixed finite-difference steps for the origin derivative diagnostics.
DELTA_STEPS = (1e-3, 1e-4)
B_STEPS = (1e-2, 5e-3)


@dataclass(frozen=True)
class SolveReport:
    """Solved and calibrated parameters with residuals and shape diagnostics."""

    params: OvaloidParams
    A: float
    residual_F: float
    residual_fb: float
    iterations: int
    univalent: bool | None = None
    ball_limit: bool = False

    def __post_init__(self):
        if not self.A > 0:
            raise ValueError(f"quadrature weight must be positive, got {self.A}")
        if self.residual_F > 1e-10:
            raise ValueError(f"residual_F {self.residual_F:.3e} above 1e-10")
        if self.residual_fb > 1e-10:
            raise ValueError(f"residual_fb {self.residual_fb:.3e} above 1e-10")


@dataclass(frozen=True)
class DerivativeEstimate:
    name: str
    estimate: float
    target: float


@dataclass(frozen=True)
class DerivativeSuite:
    """Finite-difference estimates of the rescaled functional's expansion at 0."""

    entries: tuple

    def by_name(self, name: str) -> DerivativeEstimate:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)


def residue_functional(a: float, b: float, spec: ContourSpec, scale: float = 1.0) -> float:
    """Residue of g*f' at the focus preimage b, as a contour integral.

    Combines the pole-cancelled kernel data with the Cauchy-kernel powers
    that reproduce f'(b) and f''(b).  Scales linearly in the map scale; the
    root in a is scale-independent.  The value is real up to roundoff and is
    asserted so before the imaginary part is dropped.
    """
    if not 0.0 <= a < 1.0:
        raise ValueError(f"a must lie in [0, 1), got {a}")
    if not 0.0 < b < 1.0:
        raise ValueError(f"b must lie in (0, 1), got {b}")
    outer = min(1.0 / a if a > 0 else np.inf, 1.0 / b)
    if not 1.0 < spec.radius < outer:
        raise DomainError(
            f"contour radius {spec.radius} not admissible for a={a}, b={b}"
        )
    p = OvaloidParams(a=a, b=b, C=scale)
    kern = residue_kernel(p)
    w = spec.nodes()
    sg = sqrt_g(p, w)
    integrand = (kern.h_zeta_derivative / (w - b) ** 2 + 2.0 * kern.h_value / (w - b) ** 3) * sg
    val = complex(np.sum(integrand * w) / spec.node_count)
    if abs(val.imag) > F_IMAG_TOL:
        raise ValueError(f"residue functional has imaginary part {val.imag:.3e}")
    return val.real


def rescaled_residue_functional(delta: float, b: float, spec: ContourSpec) -> float:
    """b^3 * F(sqrt(delta), b), continuous at the origin.

    The bare functional blows up as b -> 0; this rescaling admits the limit
    b = 0, where the kernel collapses to -delta/(4 w^2) and the integral is
    evaluated directly.
    """
    if delta < 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    if b < 0:
        raise ValueError(f"b must be >= 0, got {b}")
    if b == 0.0:
        if delta == 0.0:
            return 0.0
        a = float(np.sqrt(delta))
        p = OvaloidParams(a=a, b=0.0)
        eff = ContourSpec(min(spec.radius, clamped_radius(a, 0.0, spec.radius)), spec.node_count)
        w = eff.nodes()
        s = np.sqrt(1.0 + delta / (w * w)) * np.sqrt(1.0 + delta * (w * w))
        integrand = (-delta / 4.0) * (w * w - 1.0) * s / w**3
        val = complex(np.sum(integrand * w) / eff.node_count)
        if abs(val.imag) > F_IMAG_TOL:
            raise ValueError(f"rescaled functional has imaginary part {val.imag:.3e}")
        return val.real
    a = float(np.sqrt(delta))
    eff = _effective_spec(a, b, spec)
    return b**3 * residue_functional(a, b, eff)


def _effective_spec(a: float, b: float, spec: ContourSpec) -> ContourSpec:
    """Clamp the base radius so it stays admissible for the probed (a, b)."""
    return ContourSpec(min(spec.radius, clamped_radius(a, b, spec.radius)), spec.node_count)


@dataclass(frozen=True)
class _RootResult:
    a: float
    residual: float
    iterations: int
    trace: tuple


def _solve_root(
    b: float,
    spec: ContourSpec,
    tol: float,
    bracket_gain: float,
) -> _RootResult:
    trace: list[tuple[float, float]] = []

    def F(a: float) -> float:
        v = residue_functional(a, b, _effective_spec(a, b, spec))
        trace.append((a, v))
        return v

    a_floor, a_ceil = 1e-6, 0.99
    gain = bracket_gain
    lo = max(a_floor, b - 2.0 * b**3 * gain)
    hi = min(a_ceil, b + 2.0 * b**3 * gain)
    flo, fhi = F(lo), F(hi)
    expansions = 0
    while flo * fhi > 0:
        if expansions >= 40 or (lo == a_floor and hi == a_ceil):
            raise SolverError(
                f"no sign change of the residue functional for b={b} "
                f"in [{lo}, {hi}] after {expansions} expansions",
                trace=trace,
            )
        gain *= 2.0
        expansions += 1
        lo = max(a_floor, b - 2.0 * b**3 * gain)
        hi = min(a_ceil, b + 2.0 * b**3 * gain)
        flo, fhi = F(lo), F(hi)

    best_a, best_f = (lo, flo) if abs(flo) < abs(fhi) else (hi, fhi)
    prev_a, prev_f = lo, flo
    mid, fm = hi, fhi
    while hi - lo > 1e-15 and abs(best_f) > tol:
        prev_a, prev_f = mid, fm
        mid = 0.5 * (lo + hi)
        fm = F(mid)
        if abs(fm) < abs(best_f):
            best_a, best_f = mid, fm
        if flo * fm <= 0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm

    # Secant polish from the last two bisection iterates.
    x0, f0, x1, f1 = prev_a, prev_f, mid, fm
    for _ in range(8):
        if abs(best_f) <= tol or f1 == f0 or x1 == x0:
            break
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        if not (a_floor <= x2 <= a_ceil):
            break
        f2 = F(x2)
        if abs(f2) < abs(best_f):
            best_a, best_f = x2, f2
        x0, f0, x1, f1 = x1, f1, x2, f2

    if abs(best_f) > tol:
        raise SolverError(
            f"residue functional stalled at |F|={abs(best_f):.3e} > tol={tol:.1e} for b={b}",
            trace=trace,
        )
    return _RootResult(a=best_a, residual=abs(best_f), iterations=len(trace), trace=tuple(trace))


def solve_a_for_b(
    b: float,
    spec: ContourSpec | None = None,
    tol: float = DEFAULT_SOLVE_TOL,
    b_max: float = DEFAULT_B_MAX,
    bracket_gain: float = DEFAULT_BRACKET_GAIN,
) -> float:
    """Root a of the residue functional for the given b.

    Bracketing starts from the asymptotic neighborhood a ~ b and expands until
    a sign change is found; bisection then secant refine to |F| <= tol.
    """
    if not 0.0 < b <= b_max:
        raise ValueError(f"b must lie in (0, {b_max}], got {b}")
    if spec is None:
        spec = spec_for_params(b, b)
    return _solve_root(b, spec, tol, bracket_gain).a


def calibrate_scale(a: float, b: float, epsilon: float, spec: ContourSpec) -> float:
    """Scale C placing the focus at epsilon: C = epsilon / f1(b) with f1 the unit-scale map.

    The unit-scale map value at b must be real (to 1e-10) and positive.  The
    degenerate disk a=b=0 calibrates to C=epsilon directly.
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if b == 0.0:
        if a != 0.0:
            raise CalibrationError("b=0 requires a=0 (ball limit)")
        return epsilon
    p1 = OvaloidParams(a=a, b=b, C=1.0, epsilon=epsilon)
    f1b = cauchy_transform(p1, spec, complex(b))
    if abs(f1b.imag) > 1e-10:
        raise CalibrationError(f"f(b) has imaginary part {f1b.imag:.3e}")
    if f1b.real <= 0:
        raise CalibrationError(f"f(b) = {f1b.real:.3e} is not positive")
    return epsilon / f1b.real


def quadrature_weight(p: OvaloidParams, spec: ContourSpec) -> float:
    """Weight of each of the two point evaluations in the quadrature identity.

    Closed form: half the residue-kernel value times f'(b)^2, with the scale
    entering squared through g and once through f'.  The b -> 0 ball limit is
    C^4/4 (volume of the radius-C ball divided by 2 pi^2).
    """
    a, b = p.a, p.b
    if b == 0.0:
        return p.C**4 / 4.0
    prefactor = (
        0.5
        * (b * b - 1.0) ** 2
        * (b * b + a * a)
        * (1.0 + b * b * a * a)
        / ((2.0 * b) ** 2 * (1.0 - b**4) ** 2)
    )
    fpb = f_derivative(p, spec, complex(b), 1)
    return float(prefactor * p.C * p.C * np.real(fpb) ** 2)


def solve_ovaloid(
    b: float,
    epsilon: float = 1.0,
    node_count: int = DEFAULT_NODE_COUNT,
    radius: float | None = None,
    tol: float = DEFAULT_SOLVE_TOL,
    univalence_points: int = 512,
) -> SolveReport:
    """Full pipeline for one family member: solve a, calibrate C, weight, shape flags.

    b = 0 returns the ball-limit report (identity map scaled to epsilon).
    b above SUPPORTED_B_MAX is rejected; members beyond the default family
    range solve on request with the univalence flag reporting the shape test.
    """
    if not 0.0 <= b < 1.0:
        raise ValueError(f"b must lie in [0, 1), got {b}")
    if b == 0.0:
        params = OvaloidParams(a=0.0, b=0.0, C=epsilon, epsilon=epsilon)
        return SolveReport(
            params=params,
            A=epsilon**4 / 4.0,
            residual_F=0.0,
            residual_fb=0.0,
            iterations=0,
            univalent=True,
            ball_limit=True,
        )
    if b > SUPPORTED_B_MAX:
        raise ValueError(f"b={b} above supported maximum {SUPPORTED_B_MAX}")

    base = spec_for_params(b, b, node_count, radius)
    root = _solve_root(b, base, tol, DEFAULT_BRACKET_GAIN)
    a = root.a
    spec = spec_for_params(a, b, node_count, radius)
    C = calibrate_scale(a, b, epsilon, spec)
    params = OvaloidParams(a=a, b=b, C=C, epsilon=epsilon)
    A = quadrature_weight(params, spec)
    fb = cauchy_transform(params, spec, complex(b))
    curve = profile_curve(params, spec, univalence_points)
    return SolveReport(
        params=params,
        A=A,
        residual_F=root.residual,
        residual_fb=abs(fb - epsilon),
        iterations=root.iterations,
        univalent=curve.is_simple_closed(),
        ball_limit=False,
    )


def _extrapolate(e1: float, e2: float, h1: float, h2: float) -> float:
    """Remove the leading O(h) error from two estimates at steps h1 > h2."""
    return (h1 * e2 - h2 * e1) / (h1 - h2)


def derivative_suite(spec: ContourSpec | None = None) -> DerivativeSuite:
    """Finite-difference expansion data of the rescaled functional at the origin.

    Estimates the value and the first and second partial derivatives with the
    fixed steps DELTA_STEPS and B_STEPS plus Richardson extrapolation, paired
    with the published target values the diagnostics compare against.
    """
    if spec is None:
        spec = ContourSpec(clamped_radius())
    G = lambda d, b: rescaled_residue_functional(d, b, spec)
    g00 = G(0.0, 0.0)

    h1, h2 = DELTA_STEPS
    gd = _extrapolate((G(h1, 0.0) - g00) / h1, (G(h2, 0.0) - g00) / h2, h1, h2)
    gdd = _extrapolate(
        (G(2 * h1, 0.0) - 2 * G(h1, 0.0) + g00) / h1**2,
        (G(2 * h2, 0.0) - 2 * G(h2, 0.0) + g00) / h2**2,
        h1,
        h2,
    )

    k1, k2 = B_STEPS
    gb = _extrapolate((G(0.0, k1) - g00) / k1, (G(0.0, k2) - g00) / k2, k1, k2)
    gbb = _extrapolate(
        2.0 * (G(0.0, k1) - g00) / k1**2, 2.0 * (G(0.0, k2) - g00) / k2**2, k1, k2
    )

    m1 = (G(h1, k1) - G(h1, 0.0) - G(0.0, k1) + g00) / (h1 * k1)
    m2 = (G(h2, k2) - G(h2, 0.0) - G(0.0, k2) + g00) / (h2 * k2)
    # The b-steps halve between the two estimates, so 2*m2 - m1 cancels the
    # error term linear in the b-step; the delta-step part is negligible.
    gdb = 2.0 * m2 - m1

    entries = (
        DerivativeEstimate("value", g00, 0.0),
        DerivativeEstimate("d_delta", gd, -0.25),
        DerivativeEstimate("d_b", gb, 0.0),
        DerivativeEstimate("d2_b_delta", gdb, 0.0),
        DerivativeEstimate("d2_delta2", gdd, 0.0),
        DerivativeEstimate("d2_b2", gbb, 0.5),
    )
    return DerivativeSuite(entries=entries)


def expansion_plane_fit(spec: ContourSpec | None = None):
    """Least-squares fit G ~ alpha*delta + beta*b^2 on a small grid near the origin."""
    if spec is None:
        spec = ContourSpec(clamped_radius())
    deltas = (0.0, 2e-3, 4e-3, 6e-3)
    bs = (0.0, 0.02, 0.04, 0.06)
    rows, rhs = [], []
    for d in deltas:
        for b in bs:
            rows.append((d, b * b))
            rhs.append(rescaled_residue_functional(d, b, spec))
    coef, *_ = np.linalg.lstsq(np.asarray(rows), np.asarray(rhs), rcond=None)
    return float(coef[0]), float(coef[1])
