"""HTTP boundary: JSON endpoints under /api plus optional static UI serving.

Every mutating endpoint authenticates the bearer token; errors come back as
{"code", "message"} bodies with a fixed status mapping (400 validation,
401 auth, 403 forbidden, 404 unknown, 409 conflict).
"""

from __future__ import annotations

from pathlib import Path

from fastapi import Body, Depends, FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .config import AppConfig
from .errors import (
    AuthError,
    BackendUnavailable,
    Conflict,
    DomainError,
    Forbidden,
    NotFound,
    SourceUnavailable,
    StorageError,
    ValidationFailure,
)
from .service import AuthContext, Platform, filter_from_params

_STATUS_MAP = (
    (AuthError, 401),
    (Forbidden, 403),
    (NotFound, 404),
    (Conflict, 409),
    (SourceUnavailable, 502),
    (BackendUnavailable, 502),
    (StorageError, 500),
    (ValidationFailure, 400),
    (DomainError, 400),
)


def status_for(error: DomainError) -> int:
    for cls, status in _STATUS_MAP:
        if isinstance(error, cls):
            return status
    return 400


def create_app(config: AppConfig) -> FastAPI:
    platform = Platform(config)
    app = FastAPI(title="scholar-profiles", docs_url=None, redoc_url=None)
    app.state.platform = platform

    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(DomainError)
    async def domain_error_handler(_request: Request, error: DomainError):
        return JSONResponse(
            status_code=status_for(error),
            content={"code": error.code, "message": error.message},
        )

    def auth(request: Request) -> AuthContext:
        header = request.headers.get("Authorization", "")
        token = header.removeprefix("Bearer ").strip() if header else None
        return platform.authenticate(token)

    def filter_params(
        topics: str | None = Query(default=None),
        types: str | None = Query(default=None),
        licenses: str | None = Query(default=None),
        access: str | None = Query(default=None),
        year_min: int | None = Query(default=None),
        year_max: int | None = Query(default=None),
    ):
        return filter_from_params(topics, types, licenses, access, year_min, year_max)

    # -- health -----------------------------------------------------------------

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    # -- researchers --------------------------------------------------------------

    @app.post("/api/researchers", status_code=201)
    def register_researcher(body: dict = Body(...), ctx: AuthContext = Depends(auth)):
        return platform.register_researcher(
            ctx, body.get("orcid", ""), body.get("display_name", "")
        )

    @app.post("/api/researchers/{orcid}/sync")
    def sync_researcher(orcid: str, ctx: AuthContext = Depends(auth)):
        return platform.sync_researcher(ctx, orcid)

    @app.get("/api/researchers/{orcid}/indicators")
    def researcher_indicators(orcid: str, flt=Depends(filter_params)):
        return platform.indicators_for(orcid, flt)

    # -- templates -----------------------------------------------------------------

    @app.get("/api/templates")
    def list_templates(ctx: AuthContext = Depends(auth),
                       limit: int = Query(default=20),
                       offset: int = Query(default=0)):
        return platform.list_templates(ctx, limit, offset)

    @app.post("/api/templates", status_code=201)
    def create_template(body: dict = Body(...), ctx: AuthContext = Depends(auth)):
        return platform.create_template(ctx, body)

    @app.get("/api/templates/{template_id}")
    def get_template(template_id: str, ctx: AuthContext = Depends(auth)):
        return platform.get_template(ctx, template_id)

    @app.put("/api/templates/{template_id}")
    def update_template(template_id: str, body: dict = Body(...),
                        ctx: AuthContext = Depends(auth)):
        return platform.update_template(ctx, template_id, body)

    @app.post("/api/templates/{template_id}/state")
    def transition_template(template_id: str, body: dict = Body(...),
                            ctx: AuthContext = Depends(auth)):
        return platform.transition_template(ctx, template_id, body.get("target", ""))

    @app.post("/api/templates/{template_id}/grants", status_code=201)
    def grant_access(template_id: str, body: dict = Body(...),
                     ctx: AuthContext = Depends(auth)):
        return platform.grant_pilot_access(ctx, template_id, body.get("researcher_id", ""))

    @app.get("/api/templates/{template_id}/analytics")
    def template_analytics(template_id: str, ctx: AuthContext = Depends(auth)):
        return platform.template_analytics(ctx, template_id)

    @app.post("/api/templates/{template_id}/feedback", status_code=201)
    def submit_feedback(template_id: str, body: dict = Body(...),
                        ctx: AuthContext = Depends(auth)):
        return platform.submit_feedback(
            ctx, template_id, body.get("rating"), body.get("comment", "")
        )

    @app.get("/api/templates/{template_id}/feedback")
    def list_feedback(template_id: str, ctx: AuthContext = Depends(auth),
                      limit: int = Query(default=20),
                      offset: int = Query(default=0)):
        return platform.list_feedback(ctx, template_id, limit, offset)

    # -- profiles ----------------------------------------------------------------------

    @app.post("/api/profiles", status_code=201)
    def create_profile(body: dict = Body(...), ctx: AuthContext = Depends(auth)):
        return platform.create_profile(ctx, body.get("template_id", ""))

    @app.get("/api/profiles/{profile_id}/view")
    def profile_view(profile_id: str, ctx: AuthContext = Depends(auth),
                     flt=Depends(filter_params)):
        return platform.profile_view(ctx, profile_id, flt)

    @app.put("/api/profiles/{profile_id}/elements/{element_id}")
    def set_element(profile_id: str, element_id: str, body: dict = Body(...),
                    ctx: AuthContext = Depends(auth)):
        expected = body.pop("expected_revision", None)
        return platform.set_element(ctx, profile_id, element_id, body, expected)

    @app.put("/api/profiles/{profile_id}/works/{work_id}/roles")
    def set_roles(profile_id: str, work_id: str, body: dict = Body(...),
                  ctx: AuthContext = Depends(auth)):
        return platform.set_roles(
            ctx, profile_id, work_id, body.get("roles", []),
            body.get("expected_revision"),
        )

    @app.put("/api/profiles/{profile_id}/visibility")
    def set_visibility(profile_id: str, body: dict = Body(...),
                       ctx: AuthContext = Depends(auth)):
        return platform.set_visibility(
            ctx, profile_id, body.get("visibility", ""),
            body.get("expected_revision"),
        )

    # -- search & AI -------------------------------------------------------------------

    @app.get("/api/search")
    def search(q: str = Query(default=""), limit: int = Query(default=20)):
        return platform.search(q, limit)

    @app.post("/api/ai/summarize")
    def summarize(body: dict = Body(...), ctx: AuthContext = Depends(auth)):
        return platform.summarize(
            ctx,
            body.get("profile_id", ""),
            body.get("element_id", ""),
            style=body.get("style", "paragraph"),
            max_words=body.get("max_words", 150),
            opt_in=body.get("opt_in", False),
        )

    if config.ui_dir and Path(config.ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=config.ui_dir, html=True), name="ui")

    return app


def serve(config: AppConfig) -> None:
    import uvicorn

    host, _, port = config.listen_address.partition(":")
    uvicorn.run(create_app(config), host=host or "127.0.0.1", port=int(port or 8080))
