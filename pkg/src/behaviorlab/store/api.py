"""HTTP surface for the record store, plus the client the sync queue uses."""

from __future__ import annotations

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse

from .service import RecordRejectedError, RecordStore, StoreAck, stored_to_dict


def create_store_app(store: RecordStore) -> FastAPI:
    app = FastAPI(title="behaviorlab record store")

    @app.post("/records")
    async def post_record(request: Request):
        payload = await request.json()
        try:
            ack = store.put_record(payload)
        except RecordRejectedError as exc:
            return JSONResponse(status_code=422, content={"error": "schema", "problems": exc.problems})
        return {"event_id": ack.event_id, "sequence": ack.sequence}

    @app.get("/records")
    def get_records(
        session_id: str | None = None,
        behavior_name: str | None = None,
        from_ms: int | None = None,
        to_ms: int | None = None,
    ):
        time_range = None
        if from_ms is not None or to_ms is not None:
            time_range = (from_ms or 0, to_ms if to_ms is not None else 2**62)
        stored = store.query_records(
            session_id=session_id, behavior_name=behavior_name, time_range=time_range
        )
        return {"records": [stored_to_dict(s) for s in stored]}

    @app.get("/feed")
    def get_feed(
        from_sequence: int = Query(0, ge=0),
        limit: int = Query(1000, ge=1, le=10000),
        timeout_s: float = Query(0.0, ge=0.0, le=30.0),
    ):
        batch = store.poll_feed(from_sequence, limit=limit, timeout_s=timeout_s)
        return {"records": [stored_to_dict(s) for s in batch]}

    @app.get("/healthz")
    def healthz():
        return {"ok": True, "count": store.count()}

    return app


class StoreUnavailableError(RuntimeError):
    """Transient transport failure talking to the store."""


class HttpStoreClient:
    """put_record over HTTP; raises RecordRejectedError on 4xx/422 diagnostics."""

    def __init__(self, base_url: str, timeout_s: float = 5.0):
        self.base_url = base_url.rstrip("/")
        self.timeout_s = timeout_s

    def put_record(self, record) -> StoreAck:
        import requests

        from ..model.records import DataRecord
        from ..model.serialization import record_to_dict

        payload = record_to_dict(record) if isinstance(record, DataRecord) else record
        try:
            resp = requests.post(
                f"{self.base_url}/records", json=payload, timeout=self.timeout_s
            )
        except Exception as exc:
            raise StoreUnavailableError(str(exc)) from exc
        if resp.status_code == 422:
            raise RecordRejectedError(resp.json().get("problems", ["rejected"]))
        if resp.status_code >= 400:
            raise StoreUnavailableError(f"store returned {resp.status_code}")
        body = resp.json()
        return StoreAck(event_id=body["event_id"], sequence=body["sequence"])


class InProcessStoreClient:
    """Direct client over a RecordStore instance (simulation and tests)."""

    def __init__(self, store: RecordStore):
        self.store = store

    def put_record(self, record) -> StoreAck:
        return self.store.put_record(record)
