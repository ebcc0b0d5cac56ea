"""HTTP session API for interactive best-worst elicitation.

Bodies are parsed by hand (not by response models) so every failure mode
maps to the documented envelope {"error": code, "message": ...} with the
right status: 404 unknown session, 422 invalid entry, 409 conflicts with
the best/worst choice.  Responses are canonical JSON, which keeps the
result byte-identical to the ``solve`` CLI output on the same instance.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from .jsonio import canonical_json
from .sessions import SessionError, SessionStore


def _json_response(payload: Dict[str, Any], status: int = 200) -> Response:
    return Response(
        content=canonical_json(payload), media_type="application/json", status_code=status
    )


def _session_view(store: SessionStore, doc: Dict[str, Any]) -> Dict[str, Any]:
    view = dict(doc)
    view["missing"] = store.missing(doc)
    result = doc.get("result")
    view["needs_reexamination"] = None if result is None else result["needs_reexamination"]
    return view


async def _body(request: Request) -> Dict[str, Any]:
    raw = await request.body()
    if not raw:
        return {}
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SessionError(f"request body is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise SessionError("request body must be a JSON object")
    return data


def create_app(data_dir: Path) -> FastAPI:
    store = SessionStore(Path(data_dir))
    app = FastAPI(title="bwmllsm session API", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(SessionError)
    async def _session_error(_req: Request, exc: SessionError):
        return _json_response({"error": exc.code, "message": str(exc)}, status=exc.status)

    @app.post("/sessions")
    async def create_session(request: Request) -> Response:
        data = await _body(request)
        doc = store.create(
            n=data.get("n"), best=data.get("best"), worst=data.get("worst")
        )
        return _json_response(_session_view(store, doc), status=201)

    @app.put("/sessions/{sid}/comparisons")
    async def update_comparisons(sid: str, request: Request) -> Response:
        data = await _body(request)
        doc = store.update_comparisons(sid, data)
        return _json_response(_session_view(store, doc))

    @app.post("/sessions/{sid}/reset")
    async def reset_comparisons(sid: str, request: Request) -> Response:
        data = await _body(request)
        doc = store.reset(sid, data)
        return _json_response(_session_view(store, doc))

    @app.get("/sessions/{sid}/result")
    async def get_result(sid: str) -> Response:
        doc = store.get(sid)
        return _json_response(_session_view(store, doc))

    return app
