"""HTTP/JSON API backing the interactive region-correction UI.

All responses are JSON; errors are ``{"code": int, "message": str}``
bodies with the matching HTTP status: 404 for unknown file ids, 422 for
invalid rectangles, 409 for stale region edits.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from ..cluster import ClusterParams
from ..geometry import Rect
from ..grid import TYPE_COLORS
from .split import RegionOutOfBoundsError
from .workspace import (
    FileState,
    InvalidRegionsError,
    UnknownFileError,
    VersionConflictError,
    Workspace,
)

__all__ = ["create_app"]


class UploadBody(BaseModel):
    name: str
    content: str
    delimiter: str | None = None
    quote: str | None = None


class DetectBody(BaseModel):
    alpha: float | None = None
    beta: float | None = None
    gamma: float | None = None
    radius: float | None = None


class RegionBody(BaseModel):
    id: int | None = None
    x0: int
    y0: int
    x1: int
    y1: int


class RegionsPut(BaseModel):
    version: int
    regions: list[RegionBody] = Field(default_factory=list)


class InferBody(BaseModel):
    tau_r: float | None = None
    tau_f: float | None = None


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": status, "message": message})


def _regions_payload(state: FileState) -> dict:
    return {
        "version": state.version,
        "regions": [
            {
                "id": r.id,
                "boundary": {
                    "x0": r.boundary.x0,
                    "y0": r.boundary.y0,
                    "x1": r.boundary.x1,
                    "y1": r.boundary.y1,
                },
            }
            for r in state.regions
        ],
    }


def create_app(workspace: Workspace | None = None, ui_dir: str | Path | None = None) -> FastAPI:
    ws = workspace or Workspace()
    app = FastAPI(title="mondrian", version="0.1.0")

    @app.exception_handler(UnknownFileError)
    async def _unknown(request: Request, exc: UnknownFileError):
        return _error(404, f"unknown file id {exc.args[0]!r}")

    @app.exception_handler(VersionConflictError)
    async def _conflict(request: Request, exc: VersionConflictError):
        return _error(409, str(exc))

    @app.exception_handler(InvalidRegionsError)
    async def _invalid(request: Request, exc: InvalidRegionsError):
        return _error(422, str(exc))

    @app.exception_handler(RegionOutOfBoundsError)
    async def _oob(request: Request, exc: RegionOutOfBoundsError):
        return _error(422, str(exc))

    @app.exception_handler(RequestValidationError)
    async def _validation(request: Request, exc: RequestValidationError):
        return _error(422, str(exc.errors()))

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return _error(422, str(exc))

    @app.get("/files")
    def list_files():
        return {
            "files": [
                {
                    "id": s.file_id,
                    "rows": s.grid.rows,
                    "cols": s.grid.cols,
                    "regions": len(s.regions),
                    "version": s.version,
                }
                for s in ws.files.values()
            ]
        }

    @app.post("/files")
    def upload(body: UploadBody):
        state = ws.add_file(
            body.name, body.content, delimiter=body.delimiter, quote=body.quote
        )
        return {
            "id": state.file_id,
            "rows": state.grid.rows,
            "cols": state.grid.cols,
            "version": state.version,
        }

    @app.get("/files/{file_id}/grid")
    def get_grid(file_id: str):
        state = ws.get(file_id)
        return {
            "id": state.file_id,
            "rows": state.grid.rows,
            "cols": state.grid.cols,
            "cells": [[t.value for t in row] for row in state.grid.cells],
            "values": state.grid.values,
            "colors": {t.value: list(rgb) for t, rgb in TYPE_COLORS.items()},
        }

    @app.post("/files/{file_id}/detect")
    def detect(file_id: str, body: DetectBody | None = None):
        body = body or DetectBody()
        cfg = ws.config
        params = ClusterParams(
            alpha=body.alpha if body.alpha is not None else cfg.alpha,
            beta=body.beta if body.beta is not None else cfg.beta,
            gamma=body.gamma if body.gamma is not None else cfg.gamma,
            epsilon=body.radius if body.radius is not None else cfg.radius,
        )
        state = ws.detect(file_id, params)
        return _regions_payload(state)

    @app.get("/files/{file_id}/regions")
    def get_regions(file_id: str):
        return _regions_payload(ws.get(file_id))

    @app.put("/files/{file_id}/regions")
    def put_regions(file_id: str, body: RegionsPut):
        try:
            rects = [Rect(r.x0, r.y0, r.x1, r.y1) for r in body.regions]
        except ValueError as exc:
            raise InvalidRegionsError(str(exc)) from None
        state = ws.replace_regions(file_id, rects, body.version)
        return _regions_payload(state)

    @app.post("/files/{file_id}/split")
    def split(file_id: str):
        outputs = ws.split(file_id)
        return {
            "outputs": [
                {"region_id": o.region_id, "name": o.name, "content": o.content}
                for o in outputs
            ]
        }

    @app.get("/templates")
    def get_templates():
        if ws.templates is None:
            return {"templates": []}
        return ws.templates.to_json()

    @app.post("/corpus/infer")
    def infer(body: InferBody | None = None):
        body = body or InferBody()
        return ws.infer_templates(tau_r=body.tau_r, tau_f=body.tau_f).to_json()

    if ui_dir and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
