from fastapi import Depends, FastAPI, Header, HTTPException, Path, Query, Request
from fastapi.openapi.utils import get_openapi
from fastapi.responses import JSONResponse
from typing import List, Optional
import logging

from config import get_settings
from nilpotent import catalog, pipeline
from nilpotent.errors import NilformsError
from nilpotent.graphs import complete_graph
from nilpotent.serialization import algebra_from_model, catalog_entry_to_model, verdict_to_model
from nilpotent.symplectic import symplectic_exists
from schemas import (
    AlgebraFile,
    AnalysisReport,
    CatalogEntryModel,
    ErrorResponse,
    GraphReport,
    VerdictModel,
)

app = FastAPI(
    title="nilforms API",
    version="1.0",
    summary="Closed 2-forms and symplectic structures on 2-step nilpotent Lie algebras",
    description=(
        "nilforms decides, in exact rational arithmetic, which left-invariant closed 2-forms "
        "(magnetic fields) a 2-step nilpotent metric Lie algebra carries, splits them into "
        "type I and type II, classifies the algebra's singularity and decides whether a "
        "symplectic structure exists."
    ),
    license_info={"name": "MIT", "url": "https://opensource.org/licenses/MIT"},
    docs_url="/docs",
    redoc_url="/redoc",
    openapi_url="/openapi.json",
)

settings = get_settings()

# Readiness flag
app.state.ready = False

# Configure logging
logging.basicConfig(level=getattr(logging, settings.log_level.upper(), logging.INFO))
logger = logging.getLogger("nilforms")

openapi_tags = [
    {"name": "health", "description": "Service liveness and readiness"},
    {"name": "analysis", "description": "Algebra analysis and symplectic decision"},
    {"name": "catalog", "description": "Reference algebras with expected results"},
    {"name": "graphs", "description": "Algebras defined by graphs"},
]


def custom_openapi():
    if app.openapi_schema:
        return app.openapi_schema
    openapi_schema = get_openapi(
        title=app.title,
        version=app.version,
        summary=app.summary,
        description=app.description,
        routes=app.routes,
    )
    openapi_schema["tags"] = openapi_tags
    openapi_schema["servers"] = [
        {"url": "http://localhost:8000", "description": "Local development"},
    ]
    openapi_schema.setdefault("components", {}).setdefault("securitySchemes", {}).update(
        {
            "ApiKeyAuth": {
                "type": "apiKey",
                "in": "header",
                "name": "X-API-Key",
                "description": "Optional API key header when enabled by deployment",
            }
        }
    )
    app.openapi_schema = openapi_schema
    return app.openapi_schema


app.openapi = custom_openapi  # type: ignore[assignment]


@app.on_event("startup")
def on_startup() -> None:
    app.state.ready = True


@app.on_event("shutdown")
def on_shutdown() -> None:
    app.state.ready = False


@app.exception_handler(NilformsError)
def nilforms_error_handler(request: Request, exc: NilformsError) -> JSONResponse:
    logger.info("Rejected %s %s: %s", request.method, request.url.path, exc.detail)
    return JSONResponse(
        status_code=400, content=ErrorResponse(detail=exc.detail, code=exc.code).model_dump()
    )


def verify_api_key(x_api_key: str | None = Header(default=None)) -> None:
    if settings.api_key and x_api_key != settings.api_key:
        raise HTTPException(status_code=401, detail="Unauthorized")


ERROR_RESPONSES = {
    400: {"model": ErrorResponse, "description": "Invalid algebra or parameters"},
    401: {"model": ErrorResponse, "description": "Unauthorized"},
}


@app.get("/api/health", response_model=dict, tags=["health"], summary="Basic health check")
def health() -> dict:
    return {"status": "ok"}


@app.get("/api/healthz", response_model=dict, tags=["health"], summary="Liveness probe")
def healthz() -> dict:
    return {"status": "ok"}


@app.get(
    "/api/readyz",
    response_model=dict,
    tags=["health"],
    summary="Readiness probe",
    responses={
        200: {"description": "Service is ready"},
        503: {"model": ErrorResponse, "description": "Service not ready"},
    },
)
def readyz() -> JSONResponse:
    if getattr(app.state, "ready", False):
        return JSONResponse(status_code=200, content={"ready": True})
    return JSONResponse(status_code=503, content={"ready": False, "detail": "initializing"})


@app.post(
    "/api/analyze",
    response_model=AnalysisReport,
    tags=["analysis"],
    summary="Run the full analysis pipeline on an algebra",
    responses=ERROR_RESPONSES,
)
def analyze(
    body: AlgebraFile,
    seed: Optional[int] = Query(None, description="Sampling seed (default from settings)"),
    _=Depends(verify_api_key),
) -> AnalysisReport:
    algebra, metric = algebra_from_model(body)
    options = {"seed": seed} if seed is not None else {}
    return pipeline.analyze(algebra, metric, **options)


@app.post(
    "/api/symplectic",
    response_model=VerdictModel,
    tags=["analysis"],
    summary="Decide whether a symplectic structure exists",
    responses=ERROR_RESPONSES,
)
def symplectic(
    body: AlgebraFile,
    seed: Optional[int] = Query(None, description="Sampling seed (default from settings)"),
    _=Depends(verify_api_key),
) -> VerdictModel:
    algebra, _metric = algebra_from_model(body)
    return verdict_to_model(symplectic_exists(algebra, seed=seed))


@app.get("/api/catalog", response_model=List[str], tags=["catalog"], summary="Catalog entry names")
def catalog_names() -> List[str]:
    return catalog.names()


@app.get(
    "/api/catalog/{name}",
    response_model=CatalogEntryModel,
    tags=["catalog"],
    summary="Catalog entry with its expected results",
    responses=ERROR_RESPONSES,
)
def catalog_entry(name: str) -> CatalogEntryModel:
    return catalog_entry_to_model(catalog.get(name))


@app.get(
    "/api/graphs/complete/{n}",
    response_model=GraphReport,
    tags=["graphs"],
    summary="Analyze the free 2-step algebra on n generators",
    responses=ERROR_RESPONSES,
)
def complete_graph_report(
    n: int = Path(..., ge=2, le=5, description="Number of generators"),
    _=Depends(verify_api_key),
) -> GraphReport:
    return pipeline.graph_report(complete_graph(n), name=f"L(K{n})")


if __name__ == "__main__":
    # Run the API with: uvicorn main:app --reload
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
