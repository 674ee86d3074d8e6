"""Exception types shared across the package.

Validation-style problems derive from ValueError so callers (and the CLI
exit-code mapping) can treat bad inputs uniformly; solver and calibration
failures are RuntimeErrors carrying diagnostics.
"""


class DomainError(ValueError):
    """Evaluation requested outside a function's domain of validity.

    Raised for pole proximity, points outside the working annulus of the
    square-root branch, or inadmissible contour radii.
    """


class ContourError(ValueError):
    """A contour node could not be evaluated; reports node index and location."""

    def __init__(self, index: int, w: complex, reason: str):
        self.index = index
        self.w = w
        super().__init__(f"contour evaluation failed at node {index} (w={w!r}): {reason}")


class HarmonicityError(ValueError):
    """A test function is not harmonic on the body (singularity inside)."""


class SolverError(RuntimeError):
    """Root finding failed; carries the trace of probed points.

    trace is a list of (a, F(a)) pairs in probe order.
    """

    def __init__(self, message: str, trace=None):
        self.trace = list(trace or [])
        super().__init__(message)


class CalibrationError(RuntimeError):
    """Scale calibration failed (map value at the focus preimage unusable)."""
