"""HTTP inference service.

Endpoints (JSON over HTTP/1.1):
  GET  /api/info      model config, stats, provenance, version
  GET  /api/defaults  baseline wing geometry and a default condition
  POST /api/mesh      geometry -> mesh only
  POST /api/predict   geometry + conditions -> fields and coefficients

Surface arrays travel as base64-encoded little-endian f32 with their shape
declared alongside. The returned coefficients are integrated server-side
from the exact f32 field values in the response, so re-integrating the
payload reproduces them. The loaded model is immutable; requests only read.
"""

from __future__ import annotations

import base64
import json
import time
from importlib import resources
from pathlib import Path

import numpy as np
import torch
from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .. import __version__
from ..aero.integrate import integrate_coefficients
from ..aero.types import OperatingCondition, SurfaceFlow
from ..errors import GeometryError, WingflowError
from ..geometry.mesh import build_surface_mesh
from ..geometry.wing import WingShape
from ..model.network import param_count
from ..training.trainer import predict_flow
from .checkpoint import load_checkpoint

MAX_CONDITIONS = 32


class ConditionIn(BaseModel):
    mach: float = Field(gt=0.0, lt=1.0)
    aoa_deg: float = Field(ge=-10.0, le=15.0)


class PredictRequest(BaseModel):
    geometry: dict
    conditions: list[ConditionIn]


class MeshRequest(BaseModel):
    geometry: dict


def encode_f32(arr: np.ndarray) -> str:
    return base64.b64encode(np.ascontiguousarray(arr, dtype="<f4").tobytes()).decode()


def decode_f32(payload: str, shape) -> np.ndarray:
    raw = base64.b64decode(payload)
    arr = np.frombuffer(raw, dtype="<f4")
    expected = int(np.prod(shape))
    if arr.size != expected:
        raise WingflowError(f"payload has {arr.size} floats, expected {expected}")
    return arr.reshape(shape)


def default_geometry() -> dict:
    """Baseline wing of the detailed design space (fixed planform values)."""
    from ..data.design_space import DesignSpace

    space = DesignSpace.finetune_like()
    detail = space.detail
    etas = detail["section_etas"]
    shape = WingShape(
        planform=space.detail_planform(),
        thickness_dist=_const_dist(1.0),
        camber_dist=_const_dist(1.0),
        dihedral_dist=_linear7(etas, detail["dihedral"]),
        twist_dist=_linear7(etas, detail["twist_deg"]),
        section_airfoils=space.detail_sections(),
    )
    return shape.to_json()


def _const_dist(value):
    from ..geometry.spanwise import SpanwiseDistribution

    return SpanwiseDistribution.constant(value)


def _linear7(etas, values):
    from ..geometry.spanwise import SpanwiseDistribution

    return SpanwiseDistribution(np.asarray(etas), np.asarray(values), "linear7")


def parse_geometry(obj: dict) -> WingShape:
    try:
        return WingShape.from_json(obj)
    except (KeyError, TypeError) as exc:
        raise HTTPException(
            status_code=422,
            detail=[{"loc": ["body", "geometry"], "msg": f"malformed geometry: {exc}"}],
        )
    except GeometryError as exc:
        raise HTTPException(
            status_code=422,
            detail=[{"loc": ["body", "geometry"], "msg": str(exc)}],
        )


def create_app(checkpoint_path: str | Path, ui_dir: str | Path | None = None) -> FastAPI:
    model, meta = load_checkpoint(checkpoint_path)
    n_chord = int(meta.provenance.get("n_chord", 256))
    n_span = int(meta.provenance.get("n_span", 129))
    app = FastAPI(title="wingflow inference service", version=__version__)

    @app.get("/api/info")
    def info():
        return {
            "version": __version__,
            "model": meta.config.to_json(),
            "stats": meta.stats.to_json(),
            "provenance": meta.provenance,
            "n_params": param_count(model),
            "mesh_resolution": [n_chord, n_span - 1],
        }

    @app.get("/api/defaults")
    def defaults():
        return {
            "geometry": default_geometry(),
            "conditions": [{"mach": 0.85, "aoa_deg": 2.0}],
        }

    @app.post("/api/mesh")
    def mesh_endpoint(req: MeshRequest):
        shape = parse_geometry(req.geometry)
        try:
            mesh = build_surface_mesh(shape, n_chord, n_span)
        except GeometryError as exc:
            raise HTTPException(422, detail=[{"loc": ["body", "geometry"], "msg": str(exc)}])
        centers = mesh.cell_centers.astype(np.float32)
        return {"mesh_shape": list(centers.shape), "mesh": encode_f32(centers)}

    @app.post("/api/predict")
    def predict(req: PredictRequest):
        if len(req.conditions) > MAX_CONDITIONS:
            raise HTTPException(413, detail=f"at most {MAX_CONDITIONS} conditions per request")
        if not req.conditions:
            raise HTTPException(422, detail=[{"loc": ["body", "conditions"], "msg": "empty"}])
        t0 = time.perf_counter()
        shape = parse_geometry(req.geometry)
        try:
            mesh = build_surface_mesh(shape, n_chord, n_span)
        except GeometryError as exc:
            raise HTTPException(422, detail=[{"loc": ["body", "geometry"], "msg": str(exc)}])

        centers = mesh.cell_centers.astype(np.float32)
        mesh_t = torch.as_tensor(centers, dtype=torch.float32)[None].repeat(
            len(req.conditions), 1, 1, 1
        )
        cond_t = torch.tensor(
            [[c.mach, c.aoa_deg] for c in req.conditions], dtype=torch.float32
        )
        pred = predict_flow(model, mesh_t, cond_t, meta.stats).numpy().astype(np.float32)

        fields = []
        coefficients = []
        for i, c in enumerate(req.conditions):
            oc = OperatingCondition(mach=c.mach, aoa_deg=c.aoa_deg)
            flow = SurfaceFlow.from_array(pred[i].astype(np.float64))
            coeff = integrate_coefficients(mesh, flow, oc)
            fields.append(
                {
                    "cp": encode_f32(pred[i, 0]),
                    "cf_tau": encode_f32(pred[i, 1]),
                    "cf_z": encode_f32(pred[i, 2]),
                }
            )
            coefficients.append(coeff.to_json())
        return {
            "mesh_shape": list(centers.shape),
            "mesh": encode_f32(centers),
            "fields": fields,
            "coefficients": coefficients,
            "timing_ms": (time.perf_counter() - t0) * 1000.0,
        }

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    return app


def serve(
    checkpoint_path: str | Path,
    port: int = 8000,
    host: str = "127.0.0.1",
    ui_dir: str | Path | None = None,
) -> None:
    """Run the HTTP service until interrupted (binds localhost by default)."""
    import uvicorn

    uvicorn.run(create_app(checkpoint_path, ui_dir), host=host, port=port, log_level="warning")
