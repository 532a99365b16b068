"""Shared fixtures and converters between package objects and the plain
structures the brute-force oracle works on."""

from __future__ import annotations

from pathlib import Path

import pytest

from caselog.classify import Classifier
from caselog.csv_io import parse_csv
from caselog.extract import StructuredEventLog, extract_log, make_case, shared_attr_names
from caselog.model import (
    AUX_ATTRS,
    AttributeValue,
    Event,
    Tag,
    UNDEFINED,
    integer,
    real,
    text,
    time_ms,
    value_set,
)

FIXTURE = Path(__file__).resolve().parent.parent / "fixtures" / "order_events.csv"


@pytest.fixture(scope="session")
def fixture_bytes() -> bytes:
    return FIXTURE.read_bytes()


@pytest.fixture(scope="session")
def fixture_table(fixture_bytes):
    return parse_csv(fixture_bytes)


@pytest.fixture(scope="session")
def fixture_log(fixture_table):
    return extract_log(fixture_table, "order")


@pytest.fixture(scope="session")
def action_classifier():
    return Classifier(("action",))


def to_plain_value(value: AttributeValue):
    if value.tag is Tag.TEXT:
        return ("text", value.payload)
    if value.tag is Tag.INT:
        return ("int", value.payload)
    if value.tag is Tag.REAL:
        return ("real", value.payload)
    if value.tag is Tag.TIME:
        return ("time", value.payload)
    if value.tag is Tag.SET:
        return ("set", frozenset(to_plain_value(v) for v in value.payload))
    raise ValueError("undefined has no plain form")


def from_plain_value(plain) -> AttributeValue:
    tag, payload = plain
    if tag == "text":
        return text(payload)
    if tag == "int":
        return integer(payload)
    if tag == "real":
        return real(payload)
    if tag == "time":
        return time_ms(payload)
    if tag == "set":
        return value_set(from_plain_value(v) for v in payload)
    raise ValueError(f"bad plain value {plain!r}")


def plain_to_log(plain) -> StructuredEventLog:
    """Build package objects from a plain-form log."""
    counter = 0
    cases = []
    for case in plain["cases"]:
        events = []
        for raw in case["events"]:
            attrs = {name: from_plain_value(value) for name, value in raw.items()}
            events.append(Event(counter, attrs))
            counter += 1
        cases.append(
            make_case(plain["id_attr"], from_plain_value(case["id"]), tuple(events))
        )
    return StructuredEventLog(
        plain["id_attr"],
        tuple(cases),
        shared_attr_names(cases),
        plain["uncorrelated"],
    )


def log_to_plain(log: StructuredEventLog) -> dict:
    """Flatten package objects back to the oracle's plain form."""
    return {
        "id_attr": log.id_attr,
        "cases": [
            {
                "id": to_plain_value(case.id_value),
                "events": [
                    {
                        name: to_plain_value(event.get(name))
                        for name in event.attrs
                        if name not in AUX_ATTRS and event.get(name) is not UNDEFINED
                    }
                    for event in case.trace
                ],
            }
            for case in log.cases
        ],
        "uncorrelated": log.uncorrelated,
    }


def case_attrs_plain(log: StructuredEventLog) -> list[dict]:
    return [
        {name: to_plain_value(value) for name, value in sorted(case.case_attrs.items())}
        for case in log.cases
    ]
