"""HTTP/JSON API for interactive exploration.

A session is created by uploading a CSV table, then driven by choosing a
case identifier plus classifier and editing a filter stack.  Every mutation
recomputes the result from scratch (logs are desk-scale); results are cached
per (case id, classifier, stack) and the cache drops whenever any of the
three changes.  Sessions live in memory and expire after an idle timeout.

All routes live under /v1 and return JSON; responses for the same session
state are byte-identical.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field

from fastapi import Body, FastAPI, HTTPException, Query, Request
from fastapi.middleware.cors import CORSMiddleware

from .classify import Classifier, classify, simple_log
from .csv_io import DEFAULT_TIME_FORMATS, CsvProfile, parse_csv
from .errors import (
    CaselogError,
    PredicateArityError,
    PredicateSchemaError,
    StackStepError,
    UnknownAttribute,
)
from .extract import StructuredEventLog, extract_log
from .filters import FilterStack, apply_stack, event_count, stack_from_json, stack_to_json
from .model import EventTable, attribute_names
from .report import attribute_report, case_id_warnings

DEFAULT_TTL_SECONDS = 3600.0
DEFAULT_MAX_BODY = 8 * 1024 * 1024


@dataclass
class Session:
    table: EventTable
    report: dict
    case_id: str | None = None
    classifier: Classifier | None = None
    stack: FilterStack = field(default_factory=FilterStack)
    cache: dict = field(default_factory=dict)
    last_used: float = field(default_factory=time.monotonic)
    lock: threading.Lock = field(default_factory=threading.Lock)


def _error(status: int, exc: Exception, **extra) -> HTTPException:
    detail = {"error": type(exc).__name__, "message": str(exc), **extra}
    return HTTPException(status_code=status, detail=detail)


def _table_report(table: EventTable) -> dict:
    return {
        "events": len(table),
        "attributes": [profile.as_dict() for profile in attribute_report(table)],
    }


def _color_alphabet(log: StructuredEventLog, classifier: Classifier) -> list[dict]:
    counts: dict[str, int] = {}
    for case in log:
        for event in case.trace:
            cls = classify(classifier, event)
            if cls is not None:
                counts[cls.label] = counts.get(cls.label, 0) + 1
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return [
        {"label": label, "count": count, "color": color}
        for color, (label, count) in enumerate(ranked)
    ]


def _variant_rows(log: StructuredEventLog, classifier: Classifier) -> list[dict]:
    simple = simple_log(log, classifier)
    rows = [
        (count, [cls.label for cls in variant])
        for variant, count in simple.variants.items()
    ]
    rows.sort(key=lambda row: (-row[0], row[1]))
    return [{"count": count, "classes": classes} for count, classes in rows]


def _compute_result(session: Session) -> dict:
    key = (
        session.case_id,
        session.classifier.attrs if session.classifier else None,
        json.dumps(stack_to_json(session.stack), sort_keys=True),
    )
    cached = session.cache.get(key)
    if cached is not None:
        return cached

    log = extract_log(session.table, session.case_id)
    filtered, stats = apply_stack(log, session.stack)
    result = {
        "choices": {
            "case_id": session.case_id,
            "classifier": list(session.classifier.attrs),
        },
        "stack": stack_to_json(session.stack),
        "steps": [s.as_dict() for s in stats],
        "cases": len(filtered),
        "events": event_count(filtered),
        "uncorrelated": filtered.uncorrelated,
        "alphabet": _color_alphabet(filtered, session.classifier),
        "variants": _variant_rows(filtered, session.classifier),
        "warnings": case_id_warnings(session.table, session.case_id),
    }
    session.cache[key] = result
    return result


def create_app(
    session_ttl_seconds: float = DEFAULT_TTL_SECONDS,
    max_body_bytes: int = DEFAULT_MAX_BODY,
    cors_origins: tuple[str, ...] = ("*",),
) -> FastAPI:
    app = FastAPI(title="event table explorer", version="1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()

    def _purge(now: float) -> None:
        expired = [
            sid for sid, s in sessions.items()
            if now - s.last_used > session_ttl_seconds
        ]
        for sid in expired:
            sessions.pop(sid, None)

    def _session(session_id: str) -> Session:
        now = time.monotonic()
        with registry_lock:
            _purge(now)
            session = sessions.get(session_id)
            if session is None:
                raise HTTPException(
                    status_code=404,
                    detail={"error": "UnknownSession", "message": session_id},
                )
            session.last_used = now
            return session

    @app.post("/v1/tables")
    async def create_table(
        request: Request,
        delimiter: str = Query(","),
        time_column: str = Query("time"),
        time_format: str | None = Query(None),
    ):
        body = await request.body()
        if len(body) > max_body_bytes:
            raise HTTPException(
                status_code=413,
                detail={"error": "BodyTooLarge", "message": f"limit {max_body_bytes} bytes"},
            )
        if not body.strip():
            raise HTTPException(
                status_code=400,
                detail={"error": "EmptyBody", "message": "no CSV content"},
            )
        formats = (
            DEFAULT_TIME_FORMATS if time_format is None
            else (time_format, *DEFAULT_TIME_FORMATS)
        )
        try:
            profile = CsvProfile(
                delimiter=delimiter, timestamp_formats=formats, time_column=time_column
            )
            table = parse_csv(body, profile)
        except (CaselogError, ValueError) as exc:
            raise _error(400, exc)
        session = Session(table=table, report=_table_report(table))
        session_id = uuid.uuid4().hex
        with registry_lock:
            _purge(time.monotonic())
            sessions[session_id] = session
        return {"session_id": session_id, "report": session.report}

    @app.put("/v1/sessions/{session_id}/choices")
    def put_choices(session_id: str, body: dict = Body(...)):
        session = _session(session_id)
        case_id = body.get("case_id")
        classifier_attrs = body.get("classifier")
        if not isinstance(case_id, str) or not case_id:
            raise HTTPException(
                status_code=422,
                detail={"error": "BadChoices", "message": "case_id must be a string"},
            )
        if (
            not isinstance(classifier_attrs, list)
            or not classifier_attrs
            or not all(isinstance(a, str) for a in classifier_attrs)
        ):
            raise HTTPException(
                status_code=422,
                detail={"error": "BadChoices",
                        "message": "classifier must be a non-empty list of attribute names"},
            )
        with session.lock:
            known = attribute_names(session.table)
            unknown = [a for a in [case_id, *classifier_attrs] if a not in known]
            old = (session.case_id, session.classifier)
            try:
                if unknown:
                    raise UnknownAttribute(unknown[0])
                session.case_id = case_id
                session.classifier = Classifier(tuple(classifier_attrs))
                if old != (session.case_id, session.classifier):
                    session.cache.clear()
                return _compute_result(session)
            except StackStepError as exc:
                session.case_id, session.classifier = old
                raise _error(422, exc, step=exc.step)
            except (CaselogError, ValueError) as exc:
                session.case_id, session.classifier = old
                raise _error(422, exc)

    @app.put("/v1/sessions/{session_id}/stack")
    def put_stack(session_id: str, body: dict = Body(...)):
        session = _session(session_id)
        with session.lock:
            try:
                stack = stack_from_json(body)
            except StackStepError as exc:
                raise _error(422, exc, step=exc.step)
            except (PredicateSchemaError, PredicateArityError) as exc:
                raise _error(422, exc)
            old_stack = session.stack
            if stack_to_json(stack) != stack_to_json(session.stack):
                session.stack = stack
                session.cache.clear()
            if session.case_id is None or session.classifier is None:
                return {"stack": stack_to_json(session.stack)}
            try:
                return _compute_result(session)
            except StackStepError as exc:
                session.stack = old_stack
                raise _error(422, exc, step=exc.step)
            except CaselogError as exc:
                session.stack = old_stack
                raise _error(422, exc)

    @app.get("/v1/sessions/{session_id}/result")
    def get_result(session_id: str):
        session = _session(session_id)
        with session.lock:
            if session.case_id is None or session.classifier is None:
                raise HTTPException(
                    status_code=409,
                    detail={"error": "ChoicesMissing",
                            "message": "choose case_id and classifier first"},
                )
            try:
                return _compute_result(session)
            except StackStepError as exc:
                raise _error(422, exc, step=exc.step)
            except CaselogError as exc:
                raise _error(422, exc)

    @app.get("/v1/sessions/{session_id}")
    def get_session(session_id: str):
        session = _session(session_id)
        with session.lock:
            state = {
                "session_id": session_id,
                "report": session.report,
                "choices": None,
                "stack": stack_to_json(session.stack),
            }
            if session.case_id is not None and session.classifier is not None:
                state["choices"] = {
                    "case_id": session.case_id,
                    "classifier": list(session.classifier.attrs),
                }
            return state

    return app


app = create_app()
