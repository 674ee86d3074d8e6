"""Command-line driver: a thin client over the service handlers.

Commands run in process by default; --server URL sends the same request
models to a running service instance instead.  File outputs are atomic and
byte-deterministic.

Exit codes: 0 success, 2 validation error, 3 solver failure,
4 verification tolerance breach, 1 transport/unexpected failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

import pydantic

from .errors import CalibrationError, SolverError
from .serialize import dumps_json, family_csv, fmt, profile_csv, profiles_svg, write_text_atomic
from .service import handlers, schemas

EXIT_OK = 0
EXIT_TRANSPORT = 1
EXIT_VALIDATION = 2
EXIT_SOLVER = 3
EXIT_TOLERANCE = 4

_ENDPOINTS = {
    "solve": ("/solve", schemas.SolveRequest, schemas.SolveResponse),
    "profile": ("/profile", schemas.ProfileRequest, schemas.ProfileResponse),
    "family": ("/family", schemas.FamilyRequest, schemas.FamilyResponse),
    "verify": ("/verify", schemas.VerifyRequest, schemas.VerifyResponse),
    "diagnose": ("/diagnose", schemas.DiagnoseRequest, schemas.DiagnoseResponse),
}


@dataclass
class RunConfig:
    """Normalized invocation: command, request model, output options."""

    command: str
    request: object
    output_format: str
    output_path: str | None
    server: str | None


class _CliError(Exception):
    def __init__(self, message: str, code: int):
        self.code = code
        super().__init__(message)


def _default_nodes() -> int:
    env = os.environ.get("OVALOID_NODES")
    if env is None:
        return 512
    try:
        return int(env)
    except ValueError as exc:
        raise _CliError(f"OVALOID_NODES must be an integer, got {env!r}", EXIT_VALIDATION) from exc


def _parse_radius(text: str):
    if text == "auto":
        return None
    try:
        return float(text)
    except ValueError as exc:
        raise _CliError(f"--radius must be 'auto' or a number, got {text!r}", EXIT_VALIDATION) from exc


def _parse_b_list(text: str) -> list[float]:
    items = [s for s in text.split(",") if s.strip()]
    if not items:
        raise _CliError("empty b list", EXIT_VALIDATION)
    try:
        return [float(s) for s in items]
    except ValueError as exc:
        raise _CliError(f"bad b list {text!r}", EXIT_VALIDATION) from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ovaloid",
        description="Solve, plot, and verify two-point quadrature bodies of revolution",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmts, default_fmt):
        p.add_argument("--nodes", type=int, default=None, help="contour nodes (default 512 or OVALOID_NODES)")
        p.add_argument("--radius", default="auto", help="contour radius: 'auto' or a number > 1")
        p.add_argument("--format", choices=fmts, default=default_fmt, dest="output_format")
        p.add_argument("--output", "-o", default=None, help="write the result to this path")
        p.add_argument("--server", default=None, help="base URL of a running service; default in-process")

    p = sub.add_parser("solve", help="solve one parameter set and report a, C, A, residuals")
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--epsilon", type=float, default=1.0)
    common(p, ("json", "csv"), "json")

    p = sub.add_parser("profile", help="emit the boundary curve of the generating profile")
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--n-points", type=int, default=256)
    common(p, ("csv", "json", "svg"), "csv")

    p = sub.add_parser("family", help="solve a confocal family and emit overlaid profiles")
    p.add_argument("--b", required=True, help="comma-separated ascending b values")
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--n-points", type=int, default=256)
    common(p, ("svg", "csv", "json"), "svg")

    p = sub.add_parser("verify", help="check the two-point quadrature identity")
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--tests", default="constant,linear_x1,quadratic,cubic,newton_kernel")
    p.add_argument("--newton-p1", type=float, default=3.0)
    p.add_argument("--n-radial", type=int, default=96)
    p.add_argument("--n-angular", type=int, default=256)
    common(p, ("json", "csv"), "json")

    p = sub.add_parser("diagnose", help="origin derivative suite and expansion plane fit")
    common(p, ("json",), "json")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def _build_request(args) -> RunConfig:
    nodes = args.nodes if args.nodes is not None else _default_nodes()
    radius = _parse_radius(args.radius)
    try:
        if args.command == "solve":
            req = schemas.SolveRequest(b=args.b, epsilon=args.epsilon, nodes=nodes, radius=radius)
        elif args.command == "profile":
            req = schemas.ProfileRequest(
                b=args.b, epsilon=args.epsilon, nodes=nodes, radius=radius, n_points=args.n_points
            )
        elif args.command == "family":
            req = schemas.FamilyRequest(
                b_values=_parse_b_list(args.b),
                epsilon=args.epsilon,
                nodes=nodes,
                radius=radius,
                n_points=args.n_points,
            )
        elif args.command == "verify":
            tests = [t.strip() for t in args.tests.split(",") if t.strip()]
            req = schemas.VerifyRequest(
                b=args.b,
                epsilon=args.epsilon,
                nodes=nodes,
                radius=radius,
                tests=tests,
                newton_p1=args.newton_p1,
                n_radial=args.n_radial,
                n_angular=args.n_angular,
            )
        else:
            req = schemas.DiagnoseRequest(nodes=nodes, radius=radius)
    except pydantic.ValidationError as exc:
        raise _CliError(_format_validation(exc), EXIT_VALIDATION) from exc
    return RunConfig(
        command=args.command,
        request=req,
        output_format=args.output_format,
        output_path=args.output,
        server=args.server,
    )


def _format_validation(exc: pydantic.ValidationError) -> str:
    lines = [f"invalid request ({exc.error_count()} error(s)):"]
    for err in exc.errors():
        loc = ".".join(str(p) for p in err["loc"]) or "request"
        lines.append(f"  {loc}: {err['msg']}")
    return "\n".join(lines)


def _dispatch(cfg: RunConfig):
    if cfg.server is None:
        handler = getattr(handlers, cfg.command)
        try:
            return handler(cfg.request)
        except SolverError as exc:
            trace = "".join(f"\n  a={a!r} F={f!r}" for a, f in exc.trace[-12:])
            raise _CliError(f"solver failure: {exc}{trace}", EXIT_SOLVER) from exc
        except CalibrationError as exc:
            raise _CliError(f"calibration failure: {exc}", EXIT_SOLVER) from exc
        except ValueError as exc:
            raise _CliError(str(exc), EXIT_VALIDATION) from exc

    import httpx

    path, _, response_model = _ENDPOINTS[cfg.command]
    try:
        resp = httpx.post(
            cfg.server.rstrip("/") + path, json=cfg.request.model_dump(), timeout=600.0
        )
    except httpx.HTTPError as exc:
        raise _CliError(f"cannot reach server {cfg.server}: {exc}", EXIT_TRANSPORT) from exc
    if resp.status_code != 200:
        try:
            payload = resp.json()
        except Exception:
            payload = {"detail": resp.text}
        error_type = payload.get("error_type", "validation")
        code = EXIT_SOLVER if error_type == "solver_failure" else EXIT_VALIDATION
        raise _CliError(f"server rejected request: {payload.get('detail')}", code)
    return response_model.model_validate(resp.json())


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output_path:
        write_text_atomic(cfg.output_path, text)
        print(f"wrote {cfg.output_path}")
    else:
        sys.stdout.write(text)


def _solve_csv(r: schemas.SolveResponse) -> str:
    cols = ["a", "b", "C", "epsilon", "A", "residual_F", "residual_fb",
            "iterations", "univalent", "ball_limit"]
    vals = [fmt(r.a), fmt(r.b), fmt(r.C), fmt(r.epsilon), fmt(r.A), fmt(r.residual_F),
            fmt(r.residual_fb), str(r.iterations), str(r.univalent).lower(), str(r.ball_limit).lower()]
    return ",".join(cols) + "\n" + ",".join(vals) + "\n"


def _verify_csv(r: schemas.VerifyResponse) -> str:
    lines = ["kind,p1,status,lhs,rhs,rel_error,tolerance,passed"]
    for e in r.entries:
        lines.append(
            ",".join(
                [
                    e.kind,
                    "" if e.p1 is None else fmt(e.p1),
                    e.status,
                    "" if e.lhs is None else fmt(e.lhs),
                    "" if e.rhs is None else fmt(e.rhs),
                    "" if e.rel_error is None else fmt(e.rel_error),
                    fmt(e.tolerance),
                    "" if e.passed is None else str(e.passed).lower(),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _run_solve(cfg: RunConfig) -> int:
    resp = _dispatch(cfg)
    if cfg.output_format == "csv":
        _emit(cfg, _solve_csv(resp))
    else:
        _emit(cfg, dumps_json(resp.model_dump()))
    if cfg.output_path:
        flag = "ball limit" if resp.ball_limit else ("univalent" if resp.univalent else "NOT univalent")
        print(f"b={resp.b:g}: a={resp.a:.12g} C={resp.C:.12g} A={resp.A:.12g} ({flag})")
    return EXIT_OK


def _run_profile(cfg: RunConfig) -> int:
    resp = _dispatch(cfg)
    if cfg.output_format == "csv":
        text = profile_csv(resp.theta, resp.x, resp.y)
    elif cfg.output_format == "json":
        text = dumps_json(resp.model_dump())
    else:
        text = profiles_svg([(f"b={resp.solve.b:g}", resp.x, resp.y)])
    _emit(cfg, text)
    return EXIT_OK


def _run_family(cfg: RunConfig) -> int:
    resp = _dispatch(cfg)
    print("b        a                 C                 A                 status")
    for m in resp.members:
        if m.ok:
            r = m.report
            status = "ok" if r.univalent or r.ball_limit else "self-intersecting"
            print(f"{m.b:<8g} {r.a:<17.12g} {r.C:<17.12g} {r.A:<17.12g} {status}")
        else:
            print(f"{m.b:<8g} {'-':<17} {'-':<17} {'-':<17} failed: {m.error}")
    good = [m for m in resp.members if m.ok]
    if cfg.output_format == "json":
        text = dumps_json(resp.model_dump())
    elif cfg.output_format == "csv":
        text = family_csv([(m.b, m.theta, m.x, m.y) for m in good])
    else:
        if not good:
            raise _CliError("no solved members to draw", EXIT_SOLVER)
        text = profiles_svg(
            [(f"b={m.b:g}", m.x, m.y) for m in good], title="confocal profile family"
        )
    _emit(cfg, text)
    return EXIT_OK if all(m.ok for m in resp.members) else EXIT_SOLVER


def _run_verify(cfg: RunConfig) -> int:
    resp = _dispatch(cfg)
    print(f"b={resp.solve.b:g} a={resp.solve.a:.12g} C={resp.solve.C:.12g} A={resp.solve.A:.12g}")
    print(f"grid ({resp.n_radial}, {resp.n_angular}); volume {resp.volume_scale:.12g}")
    for e in resp.entries:
        label = e.kind if e.p1 is None else f"{e.kind}(p1={e.p1:g})"
        if e.status == "rejected":
            print(f"  {label:<24} rejected: {e.reason}")
        else:
            verdict = "pass" if e.passed else "FAIL"
            print(f"  {label:<24} rel_error={e.rel_error:.3e} tol={e.tolerance:.0e} {verdict}")
    text = _verify_csv(resp) if cfg.output_format == "csv" else dumps_json(resp.model_dump())
    if cfg.output_path:
        _emit(cfg, text)
    return EXIT_OK if resp.passed else EXIT_TOLERANCE


def _run_diagnose(cfg: RunConfig) -> int:
    resp = _dispatch(cfg)
    print("derivative          estimate          target")
    for d in resp.derivatives:
        print(f"{d.name:<18} {d.estimate:>17.10g} {d.target:>9.4g}")
    pf = resp.plane_fit
    print(f"plane fit: alpha={pf.alpha:.10g} (target {pf.alpha_target}), "
          f"beta={pf.beta:.10g} (target {pf.beta_target})")
    if cfg.output_path:
        _emit(cfg, dumps_json(resp.model_dump()))
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK
    try:
        cfg = _build_request(args)
        runner = {
            "solve": _run_solve,
            "profile": _run_profile,
            "family": _run_family,
            "verify": _run_verify,
            "diagnose": _run_diagnose,
        }[cfg.command]
        return runner(cfg)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
