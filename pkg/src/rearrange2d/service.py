"""HTTP service exposing the rearrangement and norm operations.

Request and response bodies mirror the JSON file formats, so a payload
saved to disk works with the CLI and vice versa.  All operations are
pure, so the service is stateless and safe behind any number of workers.

Run with:  uvicorn rearrange2d.service:app  (or `rearrange2d serve`).
"""

from __future__ import annotations

from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import io as rio
from .grid import GridFunction2D
from .lorentz import (
    CoverageError,
    Weight2D,
    classical_norm_with_weight,
    lebesgue_norm,
    lorentz_norm_2d,
    weight_check_report,
)
from .rearrange import (
    rearrange_classical,
    rearrange_iterative,
    rearrange_layercake,
    rearrange_set,
)
from .verify import SUITE_NAMES, run_named_suite

app = FastAPI(
    title="rearrange2d",
    description="Two-dimensional decreasing rearrangements and weighted Lorentz functionals",
    version="0.1.0",
)


class GridPayload(BaseModel):
    origin: tuple[float, float] = (0.0, 0.0)
    cell: tuple[float, float] = (1.0, 1.0)
    dims: tuple[int, int]
    data: list[float]


class StaircasePayload(BaseModel):
    cell: tuple[float, float]
    heights: list[int]


class StepPayload(BaseModel):
    cell: float
    values: list[float]


class WeightPayload(BaseModel):
    kind: Literal["constant", "power", "vertical", "grid"] = "constant"
    c: float = 1.0
    a: Optional[float] = None
    b: Optional[float] = None
    cell: Optional[float | tuple[float, float]] = None
    values: Optional[list[float]] = None
    origin: Optional[tuple[float, float]] = None
    dims: Optional[tuple[int, int]] = None
    data: Optional[list[float]] = None

    def to_weight(self) -> Weight2D:
        d = {k: v for k, v in self.model_dump().items() if v is not None}
        return rio.weight_from_dict(d)


class RearrangeRequest(BaseModel):
    input: GridPayload
    method: Literal["layercake", "iterative", "classical", "set"]


class RearrangeResponse(BaseModel):
    method: str
    function: Optional[GridPayload] = None
    staircase: Optional[StaircasePayload] = None
    step: Optional[StepPayload] = None


class NormRequest(BaseModel):
    function: GridPayload
    weight: WeightPayload = Field(default_factory=WeightPayload)
    p: float = 1.0
    space: Literal["lambda2", "lebesgue", "lambda1d"] = "lambda2"


class NormResponse(BaseModel):
    space: str
    p: float
    value: float


class CheckWeightRequest(BaseModel):
    weight: WeightPayload
    condition: Literal["quasinorm", "norm", "factorize", "embed"]
    weight2: Optional[WeightPayload] = None
    p: float = 1.0
    p2: float = 2.0
    family_cols: int = 4
    family_height: int = 4
    family_random: int = 20
    seed: int = 0
    box: tuple[float, float] = (4.0, 4.0)
    resolution: tuple[int, int] = (8, 8)


class CheckWeightResponse(BaseModel):
    report: dict


class VerifyRequest(BaseModel):
    suite: Literal["all", "inequalities", "counterexamples", "indexp"] = "all"
    seed: int = 0
    cases: int = 200
    p: float = 0.5
    n: int = 64


class VerifyResponse(BaseModel):
    ok: bool
    report: dict


def _grid_from_payload(payload: GridPayload) -> GridFunction2D:
    return rio.grid_function_from_dict(payload.model_dump())


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "suites": list(SUITE_NAMES)}


@app.post("/rearrange", response_model=RearrangeResponse)
def rearrange(req: RearrangeRequest) -> RearrangeResponse:
    try:
        if req.method == "set":
            E = rio.grid_set_from_dict(req.input.model_dump())
            return RearrangeResponse(
                method="set",
                staircase=StaircasePayload(**rio.staircase_to_dict(rearrange_set(E))),
            )
        f = _grid_from_payload(req.input)
        if req.method == "classical":
            return RearrangeResponse(
                method="classical",
                step=StepPayload(**rio.step_to_dict(rearrange_classical(f))),
            )
        M = rearrange_layercake(f) if req.method == "layercake" else rearrange_iterative(f)
        return RearrangeResponse(
            method=req.method,
            function=GridPayload(**rio.decreasing_to_dict(M)),
        )
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


@app.post("/norm", response_model=NormResponse)
def norm(req: NormRequest) -> NormResponse:
    try:
        f = _grid_from_payload(req.function)
        if req.space == "lebesgue":
            value = lebesgue_norm(f, req.p)
        elif req.space == "lambda2":
            value = lorentz_norm_2d(f, req.weight.to_weight(), req.p)
        else:
            value = classical_norm_with_weight(f, req.weight.to_weight(), req.p)
        return NormResponse(space=req.space, p=req.p, value=value)
    except CoverageError as exc:
        raise HTTPException(status_code=400, detail=f"coverage: {exc}")
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


@app.post("/check-weight", response_model=CheckWeightResponse)
def check_weight(req: CheckWeightRequest) -> CheckWeightResponse:
    try:
        report = weight_check_report(
            req.weight.to_weight(),
            req.condition,
            w2=None if req.weight2 is None else req.weight2.to_weight(),
            p=req.p,
            p2=req.p2,
            family_cols=req.family_cols,
            family_height=req.family_height,
            family_random=req.family_random,
            seed=req.seed,
            box=req.box,
            resolution=req.resolution,
        )
        return CheckWeightResponse(report=report)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest) -> VerifyResponse:
    try:
        report = run_named_suite(req.suite, req.seed, req.cases, req.p, req.n)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return VerifyResponse(ok=bool(report["ok"]), report=report)
