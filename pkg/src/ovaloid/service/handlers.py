"""Request handlers: validated request model in, response model out.

Pure compute wrappers around the core package; the FastAPI app and the CLI's
in-process mode both dispatch here.
"""

from __future__ import annotations

from ..contour import spec_for_params
from ..conformal import profile_curve
from ..solver import SolveReport, derivative_suite, expansion_plane_fit, solve_ovaloid
from ..verify import HarmonicTestFunction, quadrature_identity_check
from . import schemas


def _solve_response(report: SolveReport, nodes: int, radius: float | None) -> schemas.SolveResponse:
    p = report.params
    eff = spec_for_params(p.a, p.b, nodes, radius)
    return schemas.SolveResponse(
        a=p.a,
        b=p.b,
        C=p.C,
        epsilon=p.epsilon,
        A=report.A,
        residual_F=report.residual_F,
        residual_fb=report.residual_fb,
        iterations=report.iterations,
        univalent=bool(report.univalent),
        ball_limit=report.ball_limit,
        nodes=nodes,
        radius=eff.radius,
    )


def solve(req: schemas.SolveRequest) -> schemas.SolveResponse:
    report = solve_ovaloid(req.b, req.epsilon, node_count=req.nodes, radius=req.radius)
    return _solve_response(report, req.nodes, req.radius)


def profile(req: schemas.ProfileRequest) -> schemas.ProfileResponse:
    report = solve_ovaloid(req.b, req.epsilon, node_count=req.nodes, radius=req.radius)
    spec = spec_for_params(report.params.a, report.params.b, req.nodes, req.radius)
    curve = profile_curve(report.params, spec, req.n_points)
    return schemas.ProfileResponse(
        solve=_solve_response(report, req.nodes, req.radius),
        theta=curve.theta.tolist(),
        x=curve.points[:, 0].tolist(),
        y=curve.points[:, 1].tolist(),
    )


def family(req: schemas.FamilyRequest) -> schemas.FamilyResponse:
    members = []
    for b in req.b_values:
        try:
            member_req = schemas.ProfileRequest(
                b=b, epsilon=req.epsilon, nodes=req.nodes, radius=req.radius, n_points=req.n_points
            )
            prof = profile(member_req)
            members.append(
                schemas.FamilyMember(
                    b=b, ok=True, report=prof.solve, theta=prof.theta, x=prof.x, y=prof.y
                )
            )
        except Exception as exc:  # individual failures recorded, rest still produced
            members.append(schemas.FamilyMember(b=b, ok=False, error=str(exc)))
    return schemas.FamilyResponse(epsilon=req.epsilon, members=members)


def verify(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
    report = solve_ovaloid(req.b, req.epsilon, node_count=req.nodes, radius=req.radius)
    tests = []
    for kind in req.tests:
        if kind == "newton_kernel":
            tests.append(HarmonicTestFunction.newton_kernel(req.newton_p1))
        else:
            tests.append(HarmonicTestFunction(kind))
    ver = quadrature_identity_check(
        report, tests=tests, n_radial=req.n_radial, n_angular=req.n_angular, node_count=req.nodes
    )
    entries = []
    for e in ver.entries:
        refined = None
        if e.refined is not None:
            refined = schemas.RefinedResult(
                n_radial=e.refined.n_radial,
                n_angular=e.refined.n_angular,
                lhs=e.refined.lhs,
                rel_error=e.refined.rel_error,
                delta=e.refined.delta,
            )
        entries.append(
            schemas.VerifyEntry(
                kind=e.kind,
                p1=e.p1,
                status=e.status,
                tolerance=e.tolerance,
                lhs=e.lhs,
                rhs=e.rhs,
                rel_error=e.rel_error,
                passed=e.passed,
                refined=refined,
                reason=e.reason,
            )
        )
    return schemas.VerifyResponse(
        solve=_solve_response(report, req.nodes, req.radius),
        n_radial=ver.n_radial,
        n_angular=ver.n_angular,
        volume_scale=ver.volume_scale,
        entries=entries,
        passed=ver.passed,
    )


def diagnose(req: schemas.DiagnoseRequest) -> schemas.DiagnoseResponse:
    spec = spec_for_params(0.0, 0.0, req.nodes, req.radius)
    suite = derivative_suite(spec)
    alpha, beta = expansion_plane_fit(spec)
    return schemas.DiagnoseResponse(
        derivatives=[
            schemas.DerivativeResult(name=e.name, estimate=e.estimate, target=e.target)
            for e in suite.entries
        ],
        plane_fit=schemas.PlaneFitResult(alpha=alpha, beta=beta),
    )
