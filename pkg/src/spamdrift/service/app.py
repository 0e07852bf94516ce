"""HTTP/JSON API feeding the moderator dashboard.

When an admin token is configured, the mutating endpoints (feedback, alert
acknowledgement) require ``Authorization: Bearer <token>``; reads stay open.
"""

from __future__ import annotations

from fastapi import FastAPI, Header, HTTPException, Query, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .state import ServiceState

PAGE_SIZE = 20


class FeedbackBody(BaseModel):
    correct: bool
    moderator_id: str | None = None


def _summary(record: dict) -> dict:
    return {
        "event_id": record["event_id"],
        "sample_index": record["sample_index"],
        "timestamp": record["event"]["timestamp"],
        "text": record["event"]["text"][:200],
        "predicted": record["prediction"]["label"],
        "confidence": record["prediction"]["proba"][record["prediction"]["label"]],
        "label": record["event"].get("label"),
        "has_feedback": record["feedback"] is not None,
    }


def create_app(state: ServiceState, admin_token: str | None = None) -> FastAPI:
    app = FastAPI(title="spamdrift")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    def require_admin(authorization: str | None) -> None:
        if admin_token is None:
            return
        if authorization != f"Bearer {admin_token}":
            raise HTTPException(status_code=401, detail="admin token required")

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.get("/reviews")
    def reviews(
        query: str = "",
        from_ts: float | None = Query(default=None, alias="from"),
        to_ts: float | None = Query(default=None, alias="to"),
        page: int = 0,
        page_size: int = PAGE_SIZE,
    ) -> dict:
        with state.lock:
            rows = state.records
            if query:
                q = query.lower()
                rows = [r for r in rows if q in r["event"]["text"].lower()]
            if from_ts is not None:
                rows = [r for r in rows if r["event"]["timestamp"] >= from_ts]
            if to_ts is not None:
                rows = [r for r in rows if r["event"]["timestamp"] <= to_ts]
            start = page * page_size
            return {
                "total": len(rows),
                "page": page,
                "page_size": page_size,
                "reviews": [_summary(r) for r in rows[start:start + page_size]],
            }

    @app.get("/reviews/{event_id}")
    def review(event_id: str) -> dict:
        record = state.by_id.get(event_id)
        if record is None:
            raise HTTPException(status_code=404, detail="review not found")
        return {k: v for k, v in record.items() if k != "trees"}

    @app.get("/reviews/{event_id}/explanation")
    def explanation(event_id: str) -> dict:
        try:
            return state.explanation(event_id)
        except KeyError:
            raise HTTPException(status_code=404, detail="review not found")

    @app.post("/reviews/{event_id}/feedback")
    def feedback(
        event_id: str, body: FeedbackBody, authorization: str | None = Header(default=None)
    ) -> dict:
        require_admin(authorization)
        try:
            record = state.apply_feedback(event_id, body.correct, body.moderator_id)
        except KeyError:
            raise HTTPException(status_code=404, detail="review not found")
        except FileExistsError:
            raise HTTPException(status_code=409, detail="feedback already recorded")
        return {"event_id": event_id, "feedback": record["feedback"]}

    @app.get("/trees")
    def trees(index: int = 0) -> dict:
        with state.lock:
            exported = state.pipeline.export_trees()
        if not 0 <= index < len(exported):
            raise HTTPException(status_code=404, detail="tree index out of range")
        return {"index": index, "count": len(exported), "tree": exported[index]}

    @app.get("/alerts")
    def alerts() -> dict:
        with state.lock:
            return {"alerts": list(state.alerts)}

    @app.post("/alerts/{alert_id}/ack")
    def ack(alert_id: int, authorization: str | None = Header(default=None)) -> dict:
        require_admin(authorization)
        try:
            return state.acknowledge_alert(alert_id)
        except KeyError:
            raise HTTPException(status_code=404, detail="alert not found")

    @app.get("/metrics")
    def metrics() -> Response:
        return Response(content=state.metrics_json(), media_type="application/json")

    @app.get("/export")
    def export() -> Response:
        return Response(content=state.export_json(), media_type="application/json")

    return app
