"""FastAPI service wrapping the handler layer.

Long-running deployments amortize the per-prime cyclotomy caches across
requests; the CLI drives the same handlers in-process.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import __version__, api


def _run(handler, req):
    try:
        return handler(req)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


def create_app() -> FastAPI:
    app = FastAPI(
        title="srdc",
        version=__version__,
        description="Sextic residue double circulant self-dual codes: "
                    "construction, certification and minimum distance.",
    )

    @app.get("/healthz")
    def healthz() -> dict[str, str]:
        return {"status": "ok", "version": __version__}

    @app.post("/cyclotomy", response_model=api.CyclotomyResponse)
    def cyclotomy(req: api.CyclotomyRequest) -> api.CyclotomyResponse:
        return _run(api.handle_cyclotomy, req)

    @app.post("/build", response_model=api.BuildResponse)
    def build(req: api.BuildRequest) -> api.BuildResponse:
        return _run(api.handle_build, req)

    @app.post("/verify", response_model=api.VerifyResponse)
    def verify(req: api.VerifyRequest) -> api.VerifyResponse:
        return _run(api.handle_verify, req)

    @app.post("/distance", response_model=api.DistanceResponse)
    def distance(req: api.DistanceRequest) -> api.DistanceResponse:
        return _run(api.handle_distance, req)

    @app.post("/search", response_model=api.SearchResponse)
    def search(req: api.SearchRequest) -> api.SearchResponse:
        return _run(api.handle_search, req)

    @app.post("/tables", response_model=api.TablesResponse)
    def tables(req: api.TablesRequest) -> api.TablesResponse:
        return _run(api.handle_tables, req)

    return app


app = create_app()
