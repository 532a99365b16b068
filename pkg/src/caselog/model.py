"""Core value model: tagged attribute values, events, and event tables.

Events are attribute maps over a small closed set of value kinds.  A single
``UNDEFINED`` sentinel is the only representation of a missing value; events
never store it, so "defined" and "present in the map" coincide.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from typing import Iterable, Iterator, Mapping

from .errors import InvalidEventTable

TIME_ATTR = "time"
RAW_TIME_ATTR = "time:raw"
SOURCE_INDEX_ATTR = "source:index"

#: Bookkeeping attributes kept on events but hidden from attribute listings,
#: classifiers and exports: the verbatim source timestamp and the pre-sort
#: position of an event.
AUX_ATTRS = frozenset({RAW_TIME_ATTR, SOURCE_INDEX_ATTR})

_EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)


class Tag(enum.Enum):
    TEXT = "text"
    INT = "int"
    REAL = "real"
    TIME = "time"
    SET = "set"
    UNDEF = "undef"


@dataclass(frozen=True)
class AttributeValue:
    """A tagged scalar; equality is by tag *and* payload, so ``integer(23)``
    never compares equal to ``text("23")``.

    Timestamps are UTC milliseconds.  Set values (produced by aggregation)
    hold a frozenset of defined, distinct members.
    """

    tag: Tag
    payload: object = None

    def is_defined(self) -> bool:
        return self.tag is not Tag.UNDEF

    def sort_key(self):
        """Total order across tags; members of sets are ordered recursively."""
        if self.tag is Tag.SET:
            return (_TAG_RANK[self.tag], tuple(sorted(v.sort_key() for v in self.payload)))
        if self.tag is Tag.UNDEF:
            return (_TAG_RANK[self.tag], 0)
        return (_TAG_RANK[self.tag], self.payload)

    def __repr__(self) -> str:
        if self.tag is Tag.UNDEF:
            return "UNDEFINED"
        return f"{self.tag.value}({render_value(self)!r})"


_TAG_RANK = {Tag.INT: 0, Tag.REAL: 1, Tag.TIME: 2, Tag.TEXT: 3, Tag.SET: 4, Tag.UNDEF: 5}

UNDEFINED = AttributeValue(Tag.UNDEF)


def text(value: str) -> AttributeValue:
    return AttributeValue(Tag.TEXT, value)


def integer(value: int) -> AttributeValue:
    return AttributeValue(Tag.INT, int(value))


def real(value: float) -> AttributeValue:
    return AttributeValue(Tag.REAL, float(value))


def time_ms(value: int) -> AttributeValue:
    """Timestamp given as UTC milliseconds since the epoch."""
    return AttributeValue(Tag.TIME, int(value))


def value_set(values: Iterable[AttributeValue]) -> AttributeValue:
    members = frozenset(v for v in values if v.is_defined())
    return AttributeValue(Tag.SET, members)


def render_value(value: AttributeValue) -> str:
    """Human-readable rendering used by reports, variants and exports."""
    if value.tag is Tag.TEXT:
        return value.payload
    if value.tag is Tag.INT:
        return str(value.payload)
    if value.tag is Tag.REAL:
        return repr(value.payload)
    if value.tag is Tag.TIME:
        return render_time(value.payload)
    if value.tag is Tag.SET:
        members = sorted(value.payload, key=AttributeValue.sort_key)
        return "{" + ",".join(render_value(v) for v in members) + "}"
    return "⊥"


def render_time(ms: int) -> str:
    dt = _EPOCH + timedelta(milliseconds=ms)
    if ms % 1000 == 0:
        return dt.strftime("%Y-%m-%dT%H:%M:%SZ")
    return dt.strftime("%Y-%m-%dT%H:%M:%S.") + f"{ms % 1000:03d}Z"


@dataclass(frozen=True, eq=False)
class Event:
    """One observation: an ordinal position in its source table plus an
    attribute map.  Undefined entries are dropped at construction, making the
    map itself the record of what is defined."""

    index: int
    attrs: Mapping[str, AttributeValue]

    def __post_init__(self) -> None:
        cleaned = {k: v for k, v in self.attrs.items() if v.is_defined()}
        object.__setattr__(self, "attrs", cleaned)

    def get(self, name: str) -> AttributeValue:
        """The value of ``name``, or UNDEFINED; total, never raises."""
        return self.attrs.get(name, UNDEFINED)

    def time(self) -> int:
        value = self.get(TIME_ATTR)
        if value.tag is not Tag.TIME:
            raise ValueError(f"event {self.index} has no timestamp")
        return value.payload

    def defined_names(self) -> frozenset[str]:
        return frozenset(k for k in self.attrs if k not in AUX_ATTRS)

    def with_attrs(self, attrs: Mapping[str, AttributeValue], index: int | None = None) -> Event:
        return Event(self.index if index is None else index, attrs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Event):
            return NotImplemented
        return self.index == other.index and self.attrs == other.attrs

    def __hash__(self) -> int:
        return hash((self.index, frozenset(self.attrs.items())))

    def __repr__(self) -> str:
        parts = ", ".join(f"{k}={render_value(v)}" for k, v in self.attrs.items())
        return f"Event({self.index}, {parts})"


def get_attr(event: Event, name: str) -> AttributeValue:
    return event.get(name)


def validate_event(event: Event) -> list[str]:
    """Violations of the two per-event requirements; empty list means ok."""
    violations = []
    time_value = event.get(TIME_ATTR)
    if not time_value.is_defined():
        violations.append("time undefined")
    elif time_value.tag is not Tag.TIME:
        violations.append("time is not a timestamp")
    if not (event.defined_names() - {TIME_ATTR}):
        violations.append("no non-time attribute")
    return violations


@dataclass(frozen=True)
class EventTable:
    """A finite sequence of events that all define one shared attribute.

    Construction checks the table invariants: positional indices and the
    shared attribute being defined on every event.
    """

    events: tuple[Event, ...]
    shared_attr: str = TIME_ATTR

    def __post_init__(self) -> None:
        object.__setattr__(self, "events", tuple(self.events))
        for pos, event in enumerate(self.events):
            if event.index != pos:
                raise InvalidEventTable(
                    f"event at position {pos} carries index {event.index}"
                )
            if not event.get(self.shared_attr).is_defined():
                raise InvalidEventTable(
                    f"event {pos} does not define shared attribute {self.shared_attr!r}"
                )

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)


def attribute_names(table: EventTable) -> frozenset[str]:
    """Names defined with a value by at least one event (aux names hidden)."""
    names: set[str] = set()
    for event in table:
        names.update(event.defined_names())
    return frozenset(names)


def attribute_order(table: EventTable) -> list[str]:
    """attribute_names in first-appearance order, for deterministic output."""
    seen: dict[str, None] = {}
    for event in table:
        for name in event.attrs:
            if name not in AUX_ATTRS:
                seen.setdefault(name)
    return list(seen)
