"""FastAPI application exposing the solver, profiles, verification, and diagnostics."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import CalibrationError, SolverError
from . import handlers, schemas


def create_app() -> FastAPI:
    app = FastAPI(
        title="ovaloid",
        version=__version__,
        description="Two-point quadrature bodies of revolution in four dimensions",
    )

    @app.exception_handler(ValueError)
    async def _validation_error(request: Request, exc: ValueError):
        return JSONResponse(
            status_code=422,
            content={"detail": str(exc), "error_type": "validation"},
        )

    @app.exception_handler(SolverError)
    async def _solver_error(request: Request, exc: SolverError):
        return JSONResponse(
            status_code=422,
            content={
                "detail": str(exc),
                "error_type": "solver_failure",
                "trace": [[a, f] for a, f in exc.trace[-20:]],
            },
        )

    @app.exception_handler(CalibrationError)
    async def _calibration_error(request: Request, exc: CalibrationError):
        return JSONResponse(
            status_code=422,
            content={"detail": str(exc), "error_type": "solver_failure"},
        )

    @app.get("/health", response_model=schemas.HealthResponse)
    def health():
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.post("/solve", response_model=schemas.SolveResponse)
    def solve(req: schemas.SolveRequest):
        return handlers.solve(req)

    @app.post("/profile", response_model=schemas.ProfileResponse)
    def profile(req: schemas.ProfileRequest):
        return handlers.profile(req)

    @app.post("/family", response_model=schemas.FamilyResponse)
    def family(req: schemas.FamilyRequest):
        return handlers.family(req)

    @app.post("/verify", response_model=schemas.VerifyResponse)
    def verify(req: schemas.VerifyRequest):
        return handlers.verify(req)

    @app.post("/diagnose", response_model=schemas.DiagnoseResponse)
    def diagnose(req: schemas.DiagnoseRequest):
        return handlers.diagnose(req)

    return app


app = create_app()
