"""HTTP API for blind manual annotation sessions.

Endpoints: create/resume a session, fetch the next unjudged item, submit a
judgment, export all judgments, and compute inter-annotator agreement over
the shared overlap slice. Responses never include an item's intended label,
intended target, or generator identity.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import Body, FastAPI, Header, HTTPException
from fastapi.responses import PlainTextResponse
from fastapi.staticfiles import StaticFiles

from .plan import SessionPlan
from ..evaluation import (
    AnnotationJudgment,
    UndefinedAgreementError,
    krippendorff_alpha_nominal,
)

LOG_NAME = "judgments.log.jsonl"


@dataclass
class Session:
    session_id: str
    annotator_id: str
    token: str
    queue: list[str]
    served: set[str] = field(default_factory=set)


class JudgmentStore:
    """Append-only log with a last-write-wins materialized view."""

    def __init__(self, data_dir: Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.log_path = self.data_dir / LOG_NAME
        self.materialized: dict[tuple[str, str], AnnotationJudgment] = {}
        self.seq = 0
        # handlers run on a threadpool; the log gets exactly one writer at a time
        self._write_lock = threading.Lock()
        if self.log_path.exists():
            with open(self.log_path, encoding="utf-8") as fh:
                for line in fh:
                    if not line.strip():
                        continue
                    record = json.loads(line)
                    judgment = AnnotationJudgment.from_dict(record)
                    self.materialized[(judgment.item_id, judgment.annotator_id)] = judgment
                    self.seq = max(self.seq, int(record.get("seq", 0)))

    def append(self, judgment: AnnotationJudgment) -> bool:
        """Returns True when this overwrites an earlier judgment."""
        key = (judgment.item_id, judgment.annotator_id)
        with self._write_lock:
            duplicate = key in self.materialized
            self.seq += 1
            record = {**judgment.to_dict(), "seq": self.seq, "ts": time.time()}
            with open(self.log_path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(record, sort_keys=True) + "\n")
            self.materialized[key] = judgment
        return duplicate

    def judged_by(self, annotator_id: str) -> set[str]:
        return {item for item, ann in self.materialized if ann == annotator_id}

    def export_records(self) -> list[AnnotationJudgment]:
        return [self.materialized[key] for key in sorted(self.materialized)]


def create_app(
    plan: SessionPlan, data_dir: str | Path, static_dir: str | Path | None = None
) -> FastAPI:
    app = FastAPI(title="annotation API")
    store = JudgmentStore(Path(data_dir))
    sessions_by_id: dict[str, Session] = {}
    sessions_by_annotator: dict[str, Session] = {}

    def _authorized(session_id: str, token: str | None) -> Session:
        session = sessions_by_id.get(session_id)
        if session is None:
            raise HTTPException(404, "unknown session")
        if token != session.token:
            raise HTTPException(403, "missing or invalid session token")
        return session

    def _next_unjudged(session: Session) -> str | None:
        judged = store.judged_by(session.annotator_id)
        for item_id in session.queue:
            if item_id not in judged:
                return item_id
        return None

    @app.post("/sessions")
    def create_session(body: dict = Body(...)):
        annotator_id = body.get("annotator_id")
        if not annotator_id:
            raise HTTPException(422, "annotator_id is required")
        existing = sessions_by_annotator.get(annotator_id)
        if existing is not None:
            session = existing  # resume: the server is the source of truth
        else:
            try:
                queue = plan.queue_for(annotator_id)
            except Exception as exc:
                raise HTTPException(404, str(exc)) from exc
            session = Session(
                session_id=uuid.uuid4().hex[:12],
                annotator_id=annotator_id,
                token=uuid.uuid4().hex,
                queue=list(queue),
            )
            sessions_by_id[session.session_id] = session
            sessions_by_annotator[annotator_id] = session
        done = len(store.judged_by(session.annotator_id) & set(session.queue))
        return {
            "session_id": session.session_id,
            "token": session.token,
            "total_items": len(session.queue),
            "completed": done,
        }

    @app.get("/sessions/{session_id}/next")
    def next_item(session_id: str, x_session_token: str | None = Header(default=None)):
        session = _authorized(session_id, x_session_token)
        item_id = _next_unjudged(session)
        total = len(session.queue)
        done = len(store.judged_by(session.annotator_id) & set(session.queue))
        if item_id is None:
            return {"done": True, "completed": done, "total_items": total}
        session.served.add(item_id)
        item = plan.items[item_id]
        # deliberately excludes intended label/target and generator identity
        return {
            "done": False,
            "item_id": item.item_id,
            "text": item.text,
            "target_match_applies": item.target_applies,
            "position": done + 1,
            "total_items": total,
        }

    @app.post("/sessions/{session_id}/judgments")
    def submit_judgment(
        session_id: str,
        body: dict = Body(...),
        x_session_token: str | None = Header(default=None),
    ):
        session = _authorized(session_id, x_session_token)
        item_id = body.get("item_id")
        if item_id not in plan.items or item_id not in session.queue:
            raise HTTPException(404, f"item {item_id!r} is not part of this session")
        already_judged = item_id in store.judged_by(session.annotator_id)
        if item_id not in session.served and not already_judged:
            raise HTTPException(409, f"item {item_id!r} has not been served to this session")
        item = plan.items[item_id]

        missing = [k for k in ("hateful", "realistic") if not isinstance(body.get(k), bool)]
        if missing:
            raise HTTPException(422, f"boolean fields required: {missing}")
        target_match = body.get("target_match")
        if item.target_applies and not isinstance(target_match, bool):
            raise HTTPException(422, "target_match is required for this item")
        if not item.target_applies and target_match is not None:
            raise HTTPException(422, "target_match does not apply to this item")

        judgment = AnnotationJudgment(
            item_id=item_id,
            annotator_id=session.annotator_id,
            hateful=body["hateful"],
            realistic=body["realistic"],
            target_match=target_match if item.target_applies else None,
        )
        duplicate = store.append(judgment)
        return {"accepted": True, "duplicate": duplicate}

    @app.get("/export", response_class=PlainTextResponse)
    def export():
        lines = [json.dumps(j.to_dict(), sort_keys=True) for j in store.export_records()]
        return "\n".join(lines) + ("\n" if lines else "")

    @app.get("/agreement")
    def agreement():
        overlap = set(plan.overlap_ids)
        judgments = [j for j in store.materialized.values() if j.item_id in overlap]
        alphas: dict[str, float | None] = {}
        notes: dict[str, str] = {}
        for dimension in ("hateful", "target_match", "realistic"):
            try:
                alphas[dimension] = krippendorff_alpha_nominal(judgments, dimension)
            except UndefinedAgreementError:
                # uniform values: no chance disagreement; report perfect agreement
                alphas[dimension] = 1.0
                notes[dimension] = "all judgments identical; expected disagreement is zero"
            except ValueError as exc:
                alphas[dimension] = None
                notes[dimension] = str(exc)
        return {
            "n_overlap_items": len(overlap),
            "n_overlap_judgments": len(judgments),
            "alpha": alphas,
            "notes": notes,
        }

    if static_dir is not None and Path(static_dir).exists():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
