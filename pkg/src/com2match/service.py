"""HTTP review service: comparison sessions and the validate/delete workflow.

Persistence is deliberately simple: each session directory holds the input
documents plus the initial correspondence, and an append-only audit log of
decisions. Replaying the log over the initial correspondence reproduces the
current state, which is also how sessions are recovered after a restart.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .correspondence import (
    CorrespondenceError,
    DecisionError,
    WModel,
    apply_decision,
    element_names,
    link_row,
    parse_correspondence,
    serialize_correspondence,
)
from .engine import CompareConfig, compare_models, unmatched_elements
from .model_ir import Model, ModelFormatError, parse_model
from .resources import OntologyError, load_lexicon, load_ontology


class ServiceError(Exception):
    def __init__(self, status: int, code: str, message: str, detail: str = ""):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.detail = detail


@dataclass
class Session:
    id: str
    wmodel: WModel
    left_model: Model
    right_model: Model
    created_at: str
    audit_log: list[dict] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    def __init__(self, data_dir: Path):
        self.data_dir = data_dir
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, Session] = {}
        self._load_existing()

    def _session_dir(self, session_id: str) -> Path:
        return self.data_dir / session_id

    def _load_existing(self) -> None:
        for directory in sorted(self.data_dir.iterdir() if self.data_dir.exists() else []):
            meta_path = directory / "session.json"
            if not meta_path.is_file():
                continue
            self._sessions[directory.name] = self._replay(directory)

    def _replay(self, directory: Path) -> Session:
        meta = json.loads((directory / "session.json").read_text())
        left = parse_model(json.dumps(meta["leftModel"]))
        right = parse_model(json.dumps(meta["rightModel"]))
        wmodel = parse_correspondence(
            json.dumps(meta["correspondence"]), left, right)
        audit: list[dict] = []
        audit_path = directory / "audit.log"
        if audit_path.is_file():
            for line in audit_path.read_text().splitlines():
                if not line.strip():
                    continue
                entry = json.loads(line)
                wmodel, _ = apply_decision(
                    wmodel, entry["linkId"], entry["decision"],
                    entry["actor"], entry["timestamp"])
                audit.append(entry)
        return Session(id=directory.name, wmodel=wmodel, left_model=left,
                       right_model=right, created_at=meta["createdAt"],
                       audit_log=audit)

    def create(self, payload: dict) -> Session:
        try:
            left = parse_model(json.dumps(payload["left"]))
            right = parse_model(json.dumps(payload["right"]))
            onto = (load_ontology(json.dumps(payload["ontology"]))
                    if payload.get("ontology") else None)
            lex = load_lexicon(payload.get("synonyms", ""),
                               payload.get("abbreviations", ""),
                               payload.get("acronyms", ""))
            config = payload.get("config", {})
            cfg = CompareConfig(
                local_coverage=config.get("localCoverage", 1.0),
                emit_homonyms=config.get("emitHomonyms", True),
                include_self_evident_pairs=config.get("includeSelfEvidentPairs", False),
            )
        except KeyError as exc:
            raise ServiceError(422, "missing-input", f"missing field {exc}")
        except (ModelFormatError, OntologyError, ValueError) as exc:
            raise ServiceError(422, "invalid-input", str(exc))
        wmodel = compare_models(left, right, onto, lex, cfg)
        session = Session(
            id=uuid.uuid4().hex[:12], wmodel=wmodel, left_model=left,
            right_model=right,
            created_at=datetime.now(timezone.utc).isoformat(),
        )
        directory = self._session_dir(session.id)
        directory.mkdir(parents=True)
        (directory / "session.json").write_text(json.dumps({
            "createdAt": session.created_at,
            "leftModel": payload["left"],
            "rightModel": payload["right"],
            "correspondence": json.loads(serialize_correspondence(wmodel)),
        }, indent=2))
        self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise ServiceError(404, "session-not-found",
                               f"unknown session {session_id!r}")

    def decide(self, session_id: str, link_id: str, decision: str,
               actor: str) -> Session:
        session = self.get(session_id)
        with session.lock:
            timestamp = datetime.now(timezone.utc).isoformat()
            try:
                new_wm, entry = apply_decision(
                    session.wmodel, link_id, decision, actor, timestamp)
            except DecisionError as exc:
                status = 404 if "unknown link" in str(exc) else 409
                code = "link-not-found" if status == 404 else "already-decided"
                raise ServiceError(status, code, str(exc))
            # persist the audit entry before acknowledging
            with (self._session_dir(session_id) / "audit.log").open("a") as fh:
                fh.write(json.dumps(entry) + "\n")
            session.wmodel = new_wm
            session.audit_log.append(entry)
        return session


def _session_rows(session: Session) -> list[dict]:
    left_names = element_names(session.left_model)
    right_names = element_names(session.right_model)
    return [link_row(l, left_names, right_names) for l in session.wmodel.links]


def create_app(data_dir: Path, static_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="com2match review service")
    store = SessionStore(data_dir)
    app.state.store = store

    @app.exception_handler(ServiceError)
    async def handle_service_error(_: Request, exc: ServiceError):
        return JSONResponse(status_code=exc.status, content={
            "code": exc.code, "message": exc.message, "detail": exc.detail})

    @app.post("/sessions", status_code=201)
    async def create_session(payload: dict):
        session = store.create(payload)
        return {"id": session.id, "createdAt": session.created_at,
                "linkCount": len(session.wmodel.links)}

    @app.get("/sessions")
    async def list_sessions():
        return {"sessions": [
            {"id": s.id, "createdAt": s.created_at,
             "linkCount": len(s.wmodel.links)}
            for s in store._sessions.values()
        ]}

    @app.get("/sessions/{session_id}/links")
    async def list_links(session_id: str, level: str | None = None,
                         decision: str | None = None, kind: str | None = None,
                         elementKind: str | None = None):
        session = store.get(session_id)
        rows = _session_rows(session)
        if level is not None:
            rows = [r for r in rows if r["confidence"] == level]
        if decision is not None:
            rows = [r for r in rows if r["decision"] == decision]
        if kind is not None:
            links = {l.id: l for l in session.wmodel.links}
            rows = [r for r in rows if links[r["id"]].kind.value == kind]
        if elementKind is not None:
            rows = [r for r in rows if r["elementKind"] == elementKind]
        return {"links": rows}

    @app.post("/sessions/{session_id}/links/{link_id}/decision")
    async def post_decision(session_id: str, link_id: str, payload: dict):
        decision = payload.get("decision")
        if decision not in ("validated", "deleted"):
            raise ServiceError(422, "invalid-decision",
                               f"decision must be validated or deleted, got {decision!r}")
        session = store.decide(session_id, link_id, decision,
                               payload.get("actor", "anonymous"))
        row = next(r for r in _session_rows(session) if r["id"] == link_id)
        return row

    @app.get("/sessions/{session_id}/export")
    async def export_session(session_id: str):
        from .cli import build_export

        session = store.get(session_id)
        return build_export(session.wmodel, session.left_model,
                            session.right_model)

    if static_dir is not None and static_dir.is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
