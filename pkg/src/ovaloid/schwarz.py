"""Boundary data of the generating domain: the squared Schwarz-difference g,
its branch-correct square root, and the residue kernel at the focus preimage.

g(w) = C^2 (w^2-1)^2 (w^2+a^2)(1+a^2 w^2) / ((w^2-b^2)^2 (1-b^2 w^2)^2)

is the analytic continuation of (f(w) - f(1/w))^2 for the conformal map f of
the generating planar domain: a rational function of degree eight with double
poles at +-b, +-1/b and double zeros at +-1.  Its square root restricted to
the annulus a < |w| < 1/a is the Cauchy-transform integrand from which the
map and all derived quantities are computed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# Double-precision safety margin for pole proximity checks.
POLE_PROXIMITY = 1e-13


@dataclass(frozen=True)
class OvaloidParams:
    """Parameter tuple (a, b, C, epsilon) of one ovaloid candidate.

    a: zero-location parameter (zeros of g at +-ia, +-i/a)
    b: focus preimage in the unit disk (poles of g at +-b, +-1/b)
    C: positive scale of the map
    epsilon: focus location on the symmetry axis in the image plane
    """

    a: float
    b: float
    C: float = 1.0
    epsilon: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.a < 1.0:
            raise ValueError(f"a must lie in [0, 1), got {self.a}")
        if not 0.0 <= self.b < 1.0:
            raise ValueError(f"b must lie in [0, 1), got {self.b}")
        if not self.C > 0:
            raise ValueError(f"C must be positive, got {self.C}")
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")


@dataclass(frozen=True)
class ResidueKernelData:
    """Value and first derivative of the pole-cancelled kernel at the focus preimage.

    h_value is (z-b)^2 g(z) evaluated at z=b; h_zeta_derivative its z-derivative
    there.  Both exclude the overall C^2 factor of g.
    """

    h_value: float
    h_zeta_derivative: float


def _check_poles(p: OvaloidParams, w: np.ndarray) -> None:
    b = p.b
    if b == 0.0:
        if np.any(np.abs(w) < POLE_PROXIMITY):
            raise DomainError("evaluation point coincides with the degenerate pole at 0")
        return
    for pole in (b, -b, 1.0 / b, -1.0 / b):
        d = np.abs(w - pole)
        if np.any(d < POLE_PROXIMITY):
            raise DomainError(f"evaluation point within {POLE_PROXIMITY} of pole {pole}")


def g_eval(p: OvaloidParams, w):
    """Evaluate the degree-eight rational function g at w (scalar or array)."""
    w = np.asarray(w, dtype=complex)
    _check_poles(p, w)
    a2 = p.a * p.a
    b2 = p.b * p.b
    w2 = w * w
    num = (w2 - 1.0) ** 2 * (w2 + a2) * (1.0 + a2 * w2)
    den = (w2 - b2) ** 2 * (1.0 - b2 * w2) ** 2
    out = (p.C * p.C) * num / den
    return out if out.shape else complex(out)


def sqrt_g(p: OvaloidParams, w):
    """Single-valued square root of g on the working annulus a < |w| < 1/a.

    The zero factor is written (w^2+a^2)(1+a^2 w^2) = w^2 (1+a^2/w^2)(1+a^2 w^2);
    on the annulus both radicands lie in the open unit disk about 1, hence in
    the right half-plane, so their principal square roots multiply to an
    analytic branch.  The global sign is fixed so that the resulting map has
    positive derivative at the origin (a=b=0 collapses to C*(w - 1/w)).
    """
    w = np.asarray(w, dtype=complex)
    r = np.abs(w)
    a = p.a
    if np.any(r <= a) or (a > 0 and np.any(r >= 1.0 / a)):
        raise DomainError(f"|w| must lie in the annulus ({a}, {1.0 / a if a > 0 else np.inf})")
    if a == 0.0 and np.any(r == 0.0):
        raise DomainError("w = 0 is outside the working annulus")
    _check_poles(p, w)
    a2 = a * a
    b2 = p.b * p.b
    w2 = w * w
    s = np.sqrt(1.0 + a2 / w2) * np.sqrt(1.0 + a2 * w2)
    out = p.C * w * (w2 - 1.0) * s / ((w2 - b2) * (1.0 - b2 * w2))
    return out if out.shape else complex(out)


def residue_kernel(p: OvaloidParams) -> ResidueKernelData:
    """Kernel data (z-b)^2 g(z) and its z-derivative at z=b, without the C^2 factor.

    Closed forms obtained by symbolic differentiation of the pole-cancelled
    kernel; the test suite cross-checks them against finite differences of
    g_eval.  b=0 is rejected: the denominators vanish and callers must use
    the rescaled functional instead.
    """
    a, b = p.a, p.b
    if not 0.0 < b < 1.0:
        raise DomainError(f"residue kernel requires 0 < b < 1, got b={b}")
    a2 = a * a
    a4 = a2 * a2
    b2 = b * b
    h_num = a2 + b2 * (a4 + 1.0) + b2 * b2 * a2
    h_den = 4.0 * b**6 + 8.0 * b**4 + 4.0 * b2
    hz_num = (
        a2
        + b2 * (-a4 + 4.0 * a2 - 1.0)
        + 4.0 * b**4 * (a4 - a2 + 1.0)
        + b**6 * (a4 + 4.0 * a2 + 1.0)
        + 3.0 * b**8 * a2
    )
    hz_den = 4.0 * b**11 + 8.0 * b**9 - 8.0 * b**5 - 4.0 * b**3
    return ResidueKernelData(h_value=h_num / h_den, h_zeta_derivative=hz_num / hz_den)


def schwarz_on_circle(p: OvaloidParams, f, w: complex) -> complex:
    """Schwarz-function value S(z) at the boundary point z = f(w), |w| = 1.

    On the unit circle 1/w = conj(w), and S(f(w)) = f(1/w) for the real odd
    map f, so this is simply the series evaluated at conj(w).
    """
    if abs(abs(w) - 1.0) > 1e-12:
        raise DomainError(f"w must lie on the unit circle, got |w|={abs(w)}")
    return complex(f.evaluate(np.conj(w)))
