"""Pydantic request/response models of the ovaloid service.

The same models serve the HTTP API and the in-process CLI client, so every
computation entry point validates its inputs through one schema.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

SCHEMA_VERSION = 1

TestKind = Literal["constant", "linear_x1", "quadratic", "cubic", "newton_kernel"]


class _NodesMixin(BaseModel):
    nodes: int = Field(default=512, description="contour node count, power of two >= 8")
    radius: Optional[float] = Field(
        default=None, description="explicit contour radius; omit for the clamped default"
    )

    @field_validator("nodes")
    @classmethod
    def _power_of_two(cls, v: int) -> int:
        if v < 8 or (v & (v - 1)) != 0:
            raise ValueError("nodes must be a power of two >= 8")
        return v

    @field_validator("radius")
    @classmethod
    def _radius_gt_one(cls, v: Optional[float]) -> Optional[float]:
        if v is not None and not v > 1.0:
            raise ValueError("an explicit radius must exceed 1")
        return v


class SolveRequest(_NodesMixin):
    b: float = Field(ge=0.0, lt=1.0, description="focus preimage in the unit disk")
    epsilon: float = Field(default=1.0, gt=0.0, description="focus location on the axis")


class SolveResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    a: float
    b: float
    C: float
    epsilon: float
    A: float
    residual_F: float
    residual_fb: float
    iterations: int
    univalent: bool
    ball_limit: bool
    nodes: int
    radius: float


class ProfileRequest(SolveRequest):
    n_points: int = Field(default=256, ge=16, description="boundary samples of the curve")


class ProfileResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    solve: SolveResponse
    theta: list[float]
    x: list[float]
    y: list[float]


class FamilyRequest(_NodesMixin):
    b_values: list[float] = Field(min_length=1, description="ascending b values in (0, 1)")
    epsilon: float = Field(default=1.0, gt=0.0)
    n_points: int = Field(default=256, ge=16)

    @model_validator(mode="after")
    def _ascending(self):
        vals = self.b_values
        if any(not 0.0 <= v < 1.0 for v in vals):
            raise ValueError("all b values must lie in [0, 1)")
        if any(v2 <= v1 for v1, v2 in zip(vals, vals[1:])):
            raise ValueError("b values must be strictly ascending")
        return self


class FamilyMember(BaseModel):
    b: float
    ok: bool
    report: Optional[SolveResponse] = None
    theta: Optional[list[float]] = None
    x: Optional[list[float]] = None
    y: Optional[list[float]] = None
    error: Optional[str] = None


class FamilyResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    epsilon: float
    members: list[FamilyMember]


class VerifyRequest(SolveRequest):
    tests: list[TestKind] = Field(
        default=["constant", "linear_x1", "quadratic", "cubic", "newton_kernel"]
    )
    newton_p1: float = Field(default=3.0, description="axis pole of the Newton-kernel test")
    n_radial: int = Field(default=96, ge=8)
    n_angular: int = Field(default=256, ge=16)


class RefinedResult(BaseModel):
    n_radial: int
    n_angular: int
    lhs: float
    rel_error: float
    delta: float


class VerifyEntry(BaseModel):
    kind: TestKind
    p1: Optional[float] = None
    status: Literal["ok", "rejected"]
    tolerance: float
    lhs: Optional[float] = None
    rhs: Optional[float] = None
    rel_error: Optional[float] = None
    passed: Optional[bool] = None
    refined: Optional[RefinedResult] = None
    reason: Optional[str] = None


class VerifyResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    solve: SolveResponse
    n_radial: int
    n_angular: int
    volume_scale: float
    entries: list[VerifyEntry]
    passed: bool


class DiagnoseRequest(_NodesMixin):
    pass


class DerivativeResult(BaseModel):
    name: str
    estimate: float
    target: float


class PlaneFitResult(BaseModel):
    alpha: float
    beta: float
    alpha_target: float = -0.25
    beta_target: float = 0.25


class DiagnoseResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    derivatives: list[DerivativeResult]
    plane_fit: PlaneFitResult


class HealthResponse(BaseModel):
    status: str
    version: str
