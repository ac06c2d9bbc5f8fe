"""
FastAPI application exposing a Space over HTTP/1.1 + JSON.

Handlers are plain ``def`` functions, so FastAPI runs them on its worker
thread pool and requests are served concurrently; all shared state lives in
the Space.
"""

import base64
import binascii
from contextlib import asynccontextmanager
from dataclasses import asdict
from logging import getLogger

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from ..config import ServiceConfig
from ..errors import MalformedRequest, PayloadTooLarge, SemspaceError
from ..ontology import load_ontology
from ..space import MetaModel, SemanticQuery, Space, SyntacticQuery
from . import schemas

logger = getLogger("semspace.service")

# JSON envelope allowance on top of the encoded payload
_ENVELOPE_BYTES = 64 * 1024


def _error(status, code, message):
    return JSONResponse(status_code=status,
                        content=schemas.WireError(code=code, message=message).model_dump())


def _results(results):
    return schemas.ResultsResponse(results=[
        schemas.ResultItem(
            id=r.id,
            concept=r.concept,
            degree=r.degree,
            payload_b64=base64.b64encode(r.payload).decode("ascii"),
            identifier=r.identifier,
        )
        for r in results
    ])


def _decode_payload(text, limit):
    # base64 inflates by 4/3; reject before decoding huge bodies
    if len(text) > 4 * ((limit + 2) // 3):
        raise PayloadTooLarge(len(text) * 3 // 4, limit)
    try:
        payload = base64.b64decode(text, validate=True)
    except (binascii.Error, ValueError) as exc:
        raise MalformedRequest("payload_b64 is not valid base64: {0}".format(exc)) from None
    if len(payload) > limit:
        raise PayloadTooLarge(len(payload), limit)
    return payload


def body_limit(max_payload_bytes):
    """Largest request body accepted: a base64 payload at the limit plus its envelope."""
    return 4 * ((max_payload_bytes + 2) // 3) + _ENVELOPE_BYTES


def preload(space, config):
    """Load every ontology named in ``config`` into ``space``."""
    for source in config.ontologies:
        with open(source.path, encoding="utf-8") as f:
            index = load_ontology(f.read(), source.format)
        space.load_model(source.model, index)


def create_app(config=None, space=None):
    config = config or ServiceConfig()
    if space is None:
        space = Space(max_lease_ms=config.max_lease_ms)
        preload(space, config)

    @asynccontextmanager
    async def lifespan(app):
        space.start_reaper(config.reaper_interval_ms)
        try:
            yield
        finally:
            space.stop_reaper()

    app = FastAPI(title="semspace", lifespan=lifespan)
    app.state.space = space
    app.state.config = config
    limit = body_limit(config.max_payload_bytes)

    @app.middleware("http")
    async def reject_large_bodies(request: Request, call_next):
        length = request.headers.get("content-length", "")
        if length.isdigit() and int(length) > limit:
            exc = PayloadTooLarge(int(length), limit)
            logger.debug("%s %s -> %s %s", request.method, request.url.path, exc.code, exc)
            return _error(exc.status, exc.code, str(exc))
        return await call_next(request)

    @app.exception_handler(SemspaceError)
    def on_space_error(request: Request, exc: SemspaceError):
        logger.debug("%s %s -> %s %s", request.method, request.url.path, exc.code, exc)
        return _error(exc.status, exc.code, str(exc))

    @app.exception_handler(RequestValidationError)
    def on_validation_error(request: Request, exc: RequestValidationError):
        details = "; ".join(
            "{0}: {1}".format(".".join(str(p) for p in e.get("loc", ())), e.get("msg", ""))
            for e in exc.errors())
        return _error(400, "MALFORMED_REQUEST", details or "malformed request")

    @app.exception_handler(StarletteHTTPException)
    def on_http_error(request: Request, exc: StarletteHTTPException):
        return _error(exc.status_code, "MALFORMED_REQUEST", str(exc.detail))

    @app.exception_handler(Exception)
    def on_internal_error(request: Request, exc: Exception):
        logger.exception("Internal error serving %s %s", request.method, request.url.path)
        return _error(500, "INTERNAL", "internal error")

    @app.get("/v1/health")
    def health():
        return {"status": "ok"}

    @app.post("/v1/ontology", response_model=schemas.OntologyResponse)
    def ontology(body: schemas.OntologyRequest):
        index = load_ontology(body.data, body.format)
        space.load_model(body.model, index)
        return schemas.OntologyResponse(concepts=len(index))

    @app.post("/v1/write", response_model=schemas.WriteResponse)
    def write(body: schemas.WriteRequest):
        payload = _decode_payload(body.payload_b64, config.max_payload_bytes)
        entry_id, lease = space.write(payload, body.model, body.concept, body.lease_ms)
        return schemas.WriteResponse(
            id=entry_id, granted_lease_ms=lease.granted_ms, expires_at_ms=lease.expires_at)

    @app.post("/v1/read", response_model=schemas.ResultsResponse)
    def read(body: schemas.ReadRequest):
        return _results(space.read(SemanticQuery(body.model, body.concept, body.floor)))

    @app.post("/v1/read_by_id", response_model=schemas.ResultsResponse)
    def read_by_id(body: schemas.ReadByIdRequest):
        if not body.identifier:
            raise MalformedRequest("identifier must not be empty")
        return _results(space.read_by_id(SyntacticQuery(body.identifier)))

    @app.post("/v1/take", response_model=schemas.ResultsResponse)
    def take(body: schemas.TakeRequest):
        return _results(space.take(body.model, body.concept))

    @app.get("/v1/sdice", response_model=schemas.DegreeResponse)
    def sdice(model: MetaModel = Query(...), c1: str = Query(...), c2: str = Query(...)):
        return schemas.DegreeResponse(degree=space.s_dice(model, c1, c2))

    @app.get("/v1/stats", response_model=schemas.StatsResponse)
    def stats():
        return schemas.StatsResponse(**asdict(space.stats()))

    return app
