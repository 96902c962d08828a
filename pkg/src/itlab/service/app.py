"""HTTP face of the laboratory; the CLI shares every resolver used here."""

import numpy as np
from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__
from ..cli import (
    RunConfig,
    cmd_momentum,
    cmd_simulate,
    cmd_timespectrum,
    cmd_trajectories,
    resolve_bins,
    resolve_detection,
)
from ..datasets import to_json_obj
from ..errors import LabError
from ..selfcheck import run_selfcheck, selfcheck_ok
from ..states import OscillatorSpec
from ..units import parse_length, parse_time
from .schemas import (
    DatasetPayload,
    MomentumRequest,
    SelfcheckPayload,
    SimulatePayload,
    SimulateRequest,
    TimespectrumRequest,
    TrajectoriesRequest,
    VersionPayload,
)


def _detection(req):
    # an explicit boost overrides a defaulted field tag
    field = req.field
    if req.boost is not None and "field" not in req.model_fields_set:
        field = None
    return resolve_detection(req.zf, req.boost, field)


def create_app():
    app = FastAPI(title="itlab", version=__version__)

    @app.exception_handler(LabError)
    def _lab_error(request, exc):
        return JSONResponse(
            status_code=400,
            content={"error": exc.category, "message": str(exc)},
        )

    @app.post("/timespectrum", response_model=DatasetPayload)
    def timespectrum(req: TimespectrumRequest):
        run = RunConfig(
            spec=OscillatorSpec(n=req.n, mu=req.mu, omega=req.omega),
            config=_detection(req),
            t_grid=np.linspace(
                parse_time(req.tmin), parse_time(req.tmax), req.points
            ),
        )
        return to_json_obj(cmd_timespectrum(run))

    @app.post("/momentum", response_model=DatasetPayload)
    def momentum(req: MomentumRequest):
        run = RunConfig(
            spec=OscillatorSpec(n=req.n, mu=req.mu, omega=req.omega),
            config=_detection(req),
            p_grid=np.linspace(req.pmin, req.pmax, req.points),
        )
        return to_json_obj(cmd_momentum(run))

    @app.post("/simulate", response_model=SimulatePayload)
    def simulate(req: SimulateRequest):
        config = _detection(req)
        run = RunConfig(
            spec=OscillatorSpec(n=req.n, mu=req.mu, omega=req.omega),
            config=config,
            p_grid=np.linspace(req.pmin, req.pmax, req.points),
            count=req.count,
            seed=req.seed,
            bin_width=resolve_bins(req.bins, config),
        )
        events, histogram, reconstruction = cmd_simulate(run)
        return {
            "events": to_json_obj(events),
            "histogram": to_json_obj(histogram),
            "reconstruction": to_json_obj(reconstruction),
        }

    @app.post("/trajectories", response_model=DatasetPayload)
    def trajectories(req: TrajectoriesRequest):
        dataset = cmd_trajectories(
            req.mu,
            np.linspace(0.0, parse_time(req.tmax), req.tpoints),
            np.linspace(req.pfan_min, req.pfan_max, req.pfan_count),
            np.linspace(
                parse_length(req.zfan_min),
                parse_length(req.zfan_max),
                req.zfan_count,
            ),
            parse_time(req.t),
        )
        return to_json_obj(dataset)

    @app.get("/selfcheck", response_model=SelfcheckPayload)
    def selfcheck():
        results = run_selfcheck()
        return {
            "ok": bool(selfcheck_ok(results)),
            "checks": [
                {
                    "name": r.name,
                    "passed": bool(r.passed),
                    "measured": float(r.measured),
                    "bound": float(r.bound),
                }
                for r in results
            ],
        }

    @app.get("/version", response_model=VersionPayload)
    def version():
        return {"package": "itlab", "version": __version__}

    return app
