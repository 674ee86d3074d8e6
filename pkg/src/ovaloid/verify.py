"""Independent verification of the two-point quadrature identity.

For harmonic integrable u the body must satisfy

    integral_Omega u dV = pi^2 A (u(-eps,0,0,0) + u(eps,0,0,0)).

The left side is computed without the residue machinery: the 4-D integral of
an axisymmetric rotational average reduces to a weighted area integral over
the generating half profile, pulled back to the unit disk through the map's
Taylor series and evaluated by Gauss-Legendre x trapezoid quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .contour import DEFAULT_NODE_COUNT, spec_for_params
from .conformal import TaylorSeries, taylor_series
from .errors import HarmonicityError
from .solver import SolveReport

KINDS = ("constant", "linear_x1", "quadratic", "cubic", "newton_kernel")

DEFAULT_N_RADIAL = 96
DEFAULT_N_ANGULAR = 256
DEFAULT_NEWTON_P1 = 3.0

# Relative-residual pass thresholds per test kind; the odd kinds compare
# against the volume scale since their exact value is zero.
DEFAULT_TOLERANCES = {
    "constant": 1e-6,
    "linear_x1": 1e-8,
    "quadratic": 1e-6,
    "cubic": 1e-8,
    "newton_kernel": 1e-5,
}


@dataclass(frozen=True)
class HarmonicTestFunction:
    """A harmonic function on R^4 together with its axisymmetric reduction.

    The reduced form phi(X, Y) is the average of u over the 2-sphere of
    radius Y in the (x2, x3, x4) block at axial coordinate x1 = X.
    """

    kind: str
    p1: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown test function kind {self.kind!r}")
        if self.kind == "newton_kernel":
            if self.p1 is None:
                raise ValueError("newton_kernel requires the pole location p1")
        elif self.p1 is not None:
            raise ValueError(f"{self.kind} takes no pole parameter")

    @classmethod
    def constant(cls):
        return cls("constant")

    @classmethod
    def linear_x1(cls):
        return cls("linear_x1")

    @classmethod
    def quadratic(cls):
        return cls("quadratic")

    @classmethod
    def cubic(cls):
        return cls("cubic")

    @classmethod
    def newton_kernel(cls, p1: float = DEFAULT_NEWTON_P1):
        return cls("newton_kernel", p1=float(p1))

    @property
    def label(self) -> str:
        if self.kind == "newton_kernel":
            return f"newton_kernel(p1={self.p1:g})"
        return self.kind

    def reduced(self, X, Y):
        """Rotational average times the radius weight is handled by the caller;
        this is the sphere-averaged integrand phi(X, Y)."""
        X = np.asarray(X, dtype=float)
        Y = np.asarray(Y, dtype=float)
        if self.kind == "constant":
            return np.ones_like(X)
        if self.kind == "linear_x1":
            return X
        if self.kind == "quadratic":
            # mean of x_i^2 over the radius-Y sphere is Y^2/3
            return X * X - Y * Y / 3.0
        if self.kind == "cubic":
            return X**3 - X * Y * Y
        return 1.0 / ((X - self.p1) ** 2 + Y * Y)

    def evaluate_4d(self, x: np.ndarray):
        """u at points x of shape (..., 4); used by the harmonicity checks."""
        x = np.asarray(x, dtype=float)
        x1 = x[..., 0]
        r2 = x[..., 1] ** 2 + x[..., 2] ** 2 + x[..., 3] ** 2
        if self.kind == "constant":
            return np.ones_like(x1)
        if self.kind == "linear_x1":
            return x1
        if self.kind == "quadratic":
            return x1 * x1 - r2 / 3.0
        if self.kind == "cubic":
            return x1**3 - x1 * r2
        return 1.0 / ((x1 - self.p1) ** 2 + r2)

    def node_sum(self, epsilon: float) -> float:
        """u(-epsilon,0,0,0) + u(epsilon,0,0,0)."""
        nodes = np.zeros((2, 4))
        nodes[0, 0] = -epsilon
        nodes[1, 0] = epsilon
        return float(np.sum(self.evaluate_4d(nodes)))


def reduce_harmonic(t: HarmonicTestFunction):
    """Reduced 2-D integrand phi with integral_Omega u dV = 2 pi * iint phi * Y^2 dX dY."""
    return t.reduced


def boundary_x_extent(series: TaylorSeries, n: int = 1024) -> float:
    """Axial half-extent of the body from boundary samples of the series."""
    theta = 2.0 * np.pi * np.arange(n) / n
    f = series.evaluate(np.exp(1j * theta))
    return float(np.max(np.abs(f.real)))


def volume_integral(
    p,
    series: TaylorSeries,
    t: HarmonicTestFunction,
    n_radial: int = DEFAULT_N_RADIAL,
    n_angular: int = DEFAULT_N_ANGULAR,
) -> float:
    """integral_Omega u dV via pullback to the unit disk.

    2 pi * int_0^1 int_0^2pi phi(Re f, Im f) (Im f)^2 |f'|^2 rho dtheta drho,
    Gauss-Legendre in rho and trapezoid in theta.  A Newton-kernel pole on
    the axis inside the body is rejected: u must be harmonic on Omega.
    """
    if t.kind == "newton_kernel":
        extent = boundary_x_extent(series)
        if abs(t.p1) <= extent:
            raise HarmonicityError(
                f"newton kernel pole at ({t.p1:g}, 0, 0, 0) lies inside the body "
                f"(axial extent {extent:.4g}); the identity requires the pole outside"
            )
    x_gl, w_gl = np.polynomial.legendre.leggauss(n_radial)
    rho = 0.5 * (x_gl + 1.0)
    w_rho = 0.5 * w_gl
    theta = 2.0 * np.pi * np.arange(n_angular) / n_angular
    Z = rho[:, None] * np.exp(1j * theta[None, :])
    f = series.evaluate(Z)
    fp = series.derivative(Z)
    X, Y = f.real, f.imag
    phi = t.reduced(X, Y)
    inner = np.sum(w_rho[:, None] * phi * Y * Y * np.abs(fp) ** 2 * rho[:, None])
    return float(2.0 * np.pi * inner * (2.0 * np.pi / n_angular))


@dataclass(frozen=True)
class RefinedEntry:
    n_radial: int
    n_angular: int
    lhs: float
    rel_error: float
    delta: float


@dataclass(frozen=True)
class VerificationEntry:
    kind: str
    p1: float | None
    status: str  # "ok" or "rejected"
    tolerance: float
    lhs: float | None = None
    rhs: float | None = None
    rel_error: float | None = None
    passed: bool | None = None
    refined: RefinedEntry | None = None
    reason: str | None = None


@dataclass(frozen=True)
class VerificationReport:
    params: object
    A: float
    n_radial: int
    n_angular: int
    entries: tuple
    volume_scale: float

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries if e.status == "ok")


def quadrature_identity_check(
    report: SolveReport,
    tests=None,
    n_radial: int = DEFAULT_N_RADIAL,
    n_angular: int = DEFAULT_N_ANGULAR,
    node_count: int | None = None,
    refine: bool = True,
) -> VerificationReport:
    """Check the quadrature identity for each test function, with a refinement run.

    The relative residual is |lhs - rhs| / max(|rhs|, volume scale), the
    volume scale being the body volume (the constant test's lhs).  Inadmissible
    Newton kernels are recorded as rejected entries rather than failures.
    """
    p = report.params
    spec = spec_for_params(p.a, p.b, node_count or DEFAULT_NODE_COUNT)
    series = taylor_series(p, spec)
    if tests is None:
        tests = [
            HarmonicTestFunction.constant(),
            HarmonicTestFunction.linear_x1(),
            HarmonicTestFunction.quadratic(),
            HarmonicTestFunction.cubic(),
            HarmonicTestFunction.newton_kernel(),
        ]

    volume = volume_integral(p, series, HarmonicTestFunction.constant(), n_radial, n_angular)
    entries = []
    for t in tests:
        tol = DEFAULT_TOLERANCES[t.kind]
        rhs = np.pi**2 * report.A * t.node_sum(p.epsilon)
        try:
            lhs = volume_integral(p, series, t, n_radial, n_angular)
        except HarmonicityError as exc:
            entries.append(
                VerificationEntry(kind=t.kind, p1=t.p1, status="rejected", tolerance=tol, reason=str(exc))
            )
            continue
        denom = max(abs(rhs), volume)
        rel = abs(lhs - rhs) / denom
        refined = None
        if refine:
            lhs2 = volume_integral(p, series, t, 2 * n_radial, 2 * n_angular)
            refined = RefinedEntry(
                n_radial=2 * n_radial,
                n_angular=2 * n_angular,
                lhs=lhs2,
                rel_error=abs(lhs2 - rhs) / denom,
                delta=abs(lhs2 - lhs),
            )
        entries.append(
            VerificationEntry(
                kind=t.kind,
                p1=t.p1,
                status="ok",
                tolerance=tol,
                lhs=lhs,
                rhs=float(rhs),
                rel_error=rel,
                passed=rel <= tol,
                refined=refined,
            )
        )
    return VerificationReport(
        params=p,
        A=report.A,
        n_radial=n_radial,
        n_angular=n_angular,
        entries=tuple(entries),
        volume_scale=volume,
    )
