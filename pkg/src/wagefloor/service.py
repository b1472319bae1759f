"""Session-oriented HTTP facade over the simulator.

One session = one scenario plus its history. Sessions persist as
append-only JSON-lines files (one per session) under a data directory;
restarting the service replays the logs and recovers every session
byte-for-byte. Mutations are serialized per session; the engine itself
is deterministic, so a replayed log reproduces the identical history.
"""

from __future__ import annotations

import json
import secrets
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response

from .model import DomainError
from .simulator import (
    PRESETS,
    RECORD_COLUMNS,
    EconomyState,
    InvalidActionError,
    ManualAction,
    PayloadError,
    ScenarioConfig,
    StepRecord,
    config_from_payload,
    config_to_payload,
    record_to_dict,
    snapshot,
    step,
)

API_PREFIX = "/api/v1"
DEFAULT_BIND = "127.0.0.1:8750"


class ApiError(Exception):
    def __init__(self, status: int, error: str, detail=None):
        self.status = status
        self.error = error
        self.detail = detail
        super().__init__(error)


@dataclass
class Session:
    id: str
    config: ScenarioConfig
    state: EconomyState
    records: list[StepRecord]
    pending: ManualAction | None = None
    created_at: str = ""
    updated_at: str = ""
    lock: threading.Lock = field(default_factory=threading.Lock)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class SessionStore:
    """In-memory sessions backed by per-session append-only logs."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._recover()

    # -- persistence ------------------------------------------------------

    def _path(self, session_id: str) -> Path:
        return self.data_dir / f"{session_id}.jsonl"

    def _append(self, session_id: str, event: dict) -> None:
        with self._path(session_id).open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(event) + "\n")
            fh.flush()

    def _recover(self) -> None:
        for path in sorted(self.data_dir.glob("*.jsonl")):
            session = self._replay(path)
            if session is not None:
                self._sessions[session.id] = session

    def _replay(self, path: Path) -> Session | None:
        lines = path.read_text(encoding="utf-8").splitlines()
        if not lines:
            return None
        head = json.loads(lines[0])
        if head.get("kind") != "config":
            return None
        config = config_from_payload(head["payload"])
        session = Session(
            id=head["id"],
            config=config,
            state=config.initial,
            records=[snapshot(config.initial, config)],
            created_at=head.get("at", ""),
            updated_at=head.get("at", ""),
        )
        for line in lines[1:]:
            event = json.loads(line)
            kind = event.get("kind")
            if kind == "action":
                session.pending = ManualAction(
                    ratio=event.get("ratio"), floor=event.get("floor"))
            elif kind == "advance":
                self._advance_session(session, int(event["n"]), persist=False)
            session.updated_at = event.get("at", session.updated_at)
        return session

    # -- operations -------------------------------------------------------

    def create(self, config: ScenarioConfig) -> Session:
        session_id = secrets.token_urlsafe(16)
        now = _now()
        session = Session(
            id=session_id,
            config=config,
            state=config.initial,
            records=[snapshot(config.initial, config)],
            created_at=now,
            updated_at=now,
        )
        with self._lock:
            self._sessions[session_id] = session
        self._append(session_id, {
            "kind": "config",
            "id": session_id,
            "at": now,
            "payload": config_to_payload(config),
        })
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise ApiError(404, "session not found", session_id)
        return session

    def delete(self, session_id: str) -> None:
        with self._lock:
            session = self._sessions.pop(session_id, None)
        if session is None:
            raise ApiError(404, "session not found", session_id)
        with session.lock:
            self._path(session_id).unlink(missing_ok=True)

    def set_action(self, session_id: str, action: ManualAction) -> None:
        session = self.get(session_id)
        with session.lock:
            session.pending = action
            now = _now()
            session.updated_at = now
            self._append(session_id, {
                "kind": "action",
                "at": now,
                "ratio": action.ratio,
                "floor": action.floor,
            })

    def _advance_session(self, session: Session, n: int,
                         persist: bool = True) -> list[StepRecord]:
        """Run n steps atomically: nothing is committed if any step fails."""
        state = session.state
        new_records: list[StepRecord] = []
        pending = session.pending
        for i in range(n):
            action = pending if i == 0 else None
            try:
                state, record = step(state, session.config, action)
            except InvalidActionError as exc:
                raise ApiError(
                    422, "invalid action",
                    [{"field": "pending_action",
                      "message": f"step {session.state.t + i + 1}: {exc}"}],
                ) from exc
            except (DomainError, ValueError) as exc:
                raise ApiError(
                    409, "simulation step failed",
                    {"step": session.state.t + i + 1, "reason": str(exc)},
                ) from exc
            new_records.append(record)
        session.state = state
        session.records.extend(new_records)
        session.pending = None
        now = _now()
        session.updated_at = now
        if persist:
            self._append(session.id, {"kind": "advance", "at": now, "n": n})
        return new_records

    def advance(self, session_id: str, n: int) -> list[StepRecord]:
        session = self.get(session_id)
        with session.lock:
            return self._advance_session(session, n)


# ---------------------------------------------------------------------------
# HTTP layer
# ---------------------------------------------------------------------------

def create_app(data_dir: str | Path) -> FastAPI:
    app = FastAPI(title="wagefloor", docs_url=None, redoc_url=None)
    store = SessionStore(data_dir)
    app.state.store = store

    @app.exception_handler(ApiError)
    async def _api_error(_req: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status,
            content={"error": exc.error, "detail": exc.detail},
        )

    @app.exception_handler(RequestValidationError)
    async def _body_error(_req: Request, exc: RequestValidationError):
        detail = [{"field": ".".join(str(p) for p in err.get("loc", ())),
                   "message": err.get("msg", "invalid")} for err in exc.errors()]
        return JSONResponse(status_code=422,
                            content={"error": "invalid payload", "detail": detail})

    @app.post(f"{API_PREFIX}/sessions", status_code=201)
    def create_session(body: dict = Body(...)):
        preset = body.get("preset")
        config_payload = body.get("config")
        if (preset is None) == (config_payload is None):
            raise ApiError(422, "invalid payload", [
                {"field": "", "message": "exactly one of preset or config required"}])
        if preset is not None:
            factory = PRESETS.get(preset)
            if factory is None:
                raise ApiError(422, "invalid payload", [
                    {"field": "preset",
                     "message": f"unknown preset {preset!r}; valid: {', '.join(sorted(PRESETS))}"}])
            config = factory()
        else:
            try:
                config = config_from_payload(config_payload)
            except PayloadError as exc:
                raise ApiError(422, "invalid payload", [
                    {"field": f, "message": m} for f, m in exc.problems])
        session = store.create(config)
        return JSONResponse(status_code=201, content={
            "id": session.id,
            "snapshot": record_to_dict(session.records[0]),
        })

    @app.get(f"{API_PREFIX}/sessions/{{session_id}}")
    def get_session(session_id: str):
        session = store.get(session_id)
        with session.lock:
            return {
                "config": config_to_payload(session.config),
                "t": session.state.t,
                "latest": record_to_dict(session.records[-1]),
            }

    @app.post(f"{API_PREFIX}/sessions/{{session_id}}/action", status_code=204)
    def set_action(session_id: str, body: dict = Body(...)):
        ratio = body.get("ratio")
        floor = body.get("floor")
        problems = []
        for name, value in (("ratio", ratio), ("floor", floor)):
            if value is not None and (isinstance(value, bool)
                                      or not isinstance(value, (int, float))
                                      or not value > 0.0):
                problems.append({"field": name, "message": "must be a positive number"})
        if (ratio is None) == (floor is None):
            problems.append({"field": "", "message": "exactly one of ratio or floor required"})
        if problems:
            raise ApiError(422, "invalid payload", problems)
        store.get(session_id)  # 404 wins over payload problems resolved above
        store.set_action(session_id, ManualAction(ratio=ratio, floor=floor))
        return Response(status_code=204)

    @app.post(f"{API_PREFIX}/sessions/{{session_id}}/advance")
    def advance(session_id: str, body: dict = Body(...)):
        n = body.get("n")
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise ApiError(422, "invalid payload",
                           [{"field": "n", "message": "must be a positive integer"}])
        records = store.advance(session_id, n)
        return {"records": [record_to_dict(r) for r in records]}

    @app.get(f"{API_PREFIX}/sessions/{{session_id}}/history")
    def history(session_id: str, metrics: str | None = None):
        session = store.get(session_id)
        if metrics is None:
            columns = list(RECORD_COLUMNS)
        else:
            requested = [m.strip() for m in metrics.split(",") if m.strip()]
            unknown = [m for m in requested if m not in RECORD_COLUMNS]
            if unknown:
                raise ApiError(422, "unknown metric", [
                    {"field": "metrics",
                     "message": f"unknown: {', '.join(unknown)}; valid: {', '.join(RECORD_COLUMNS)}"}])
            columns = ["t"] + [m for m in requested if m != "t"]
        with session.lock:
            rows = [[getattr(r, c) for c in columns] for r in session.records]
        return {"columns": columns, "rows": rows}

    @app.delete(f"{API_PREFIX}/sessions/{{session_id}}", status_code=204)
    def delete_session(session_id: str):
        store.delete(session_id)
        return Response(status_code=204)

    return app


def parse_bind(bind: str) -> tuple[str, int]:
    host, _, port = bind.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"bind must be HOST:PORT, got {bind!r}")
    return host, int(port)
