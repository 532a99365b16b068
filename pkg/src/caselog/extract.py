"""Correlating events into cases and building structured event logs.

A case identifier is any non-time attribute.  Events sharing a defined value
for it form one case; events where it is ⊥ belong to no case.  Each case
carries a trace (its events in time order) and case attributes: those whose
value is identical and defined across all events of the case (the identifier
itself always qualifies).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .errors import (
    EmptyEventSet,
    MissingActivityAttribute,
    TimeAsCaseId,
    UnknownAttribute,
)
from .model import (
    TIME_ATTR,
    AttributeValue,
    Event,
    EventTable,
    attribute_names,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Case:
    """One case: identifier value, attributes constant across its events, and
    the trace (events in time order, original position breaking ties)."""

    id_value: AttributeValue
    case_attrs: dict[str, AttributeValue]
    trace: tuple[Event, ...]

    def __len__(self) -> int:
        return len(self.trace)


@dataclass(frozen=True)
class StructuredEventLog:
    """All cases for one case identifier, the names of attributes that are
    case attributes of every case, and the number of events left out because
    the identifier was undefined on them."""

    id_attr: str
    cases: tuple[Case, ...]
    global_case_attrs: frozenset[str] = field(default_factory=frozenset)
    uncorrelated: int = 0

    def __len__(self) -> int:
        return len(self.cases)

    def __iter__(self):
        return iter(self.cases)

    def case_ids(self) -> list[AttributeValue]:
        return [case.id_value for case in self.cases]


def _groups(table: EventTable, id_attr: str) -> dict[AttributeValue, list[Event]]:
    if id_attr not in attribute_names(table):
        raise UnknownAttribute(id_attr)
    groups: dict[AttributeValue, list[Event]] = {}
    for event in table:
        value = event.get(id_attr)
        if value.is_defined():
            groups.setdefault(value, []).append(event)
    return groups


def cases(table: EventTable, id_attr: str) -> set[AttributeValue]:
    """The distinct defined values of the identifier attribute."""
    return set(_groups(table, id_attr))


def correlate(table: EventTable, id_attr: str, c: AttributeValue) -> set[Event]:
    """The events whose identifier value equals the given case; events with
    an undefined identifier belong to no case."""
    return set(_groups(table, id_attr).get(c, ()))


def build_trace(events) -> tuple[Event, ...]:
    """Events in time order; equal timestamps keep ascending source order."""
    events = list(events)
    if not events:
        raise EmptyEventSet()
    return tuple(sorted(events, key=lambda e: (e.time(), e.index)))


def constant_attrs(events) -> dict[str, AttributeValue]:
    """Attributes holding one identical defined value across all events."""
    names: set[str] = set()
    for event in events:
        names |= event.defined_names()
    out: dict[str, AttributeValue] = {}
    for name in sorted(names):
        values = {event.get(name) for event in events}
        if len(values) == 1 and (only := next(iter(values))).is_defined():
            out[name] = only
    return out


def make_case(id_attr: str, id_value: AttributeValue, trace: tuple[Event, ...]) -> Case:
    """A case over an already-ordered trace; attributes recomputed, with the
    identifier kept even when the trace is empty."""
    attrs = constant_attrs(trace)
    attrs[id_attr] = id_value
    return Case(id_value, attrs, trace)


def shared_attr_names(built) -> frozenset[str]:
    """Names that are case attributes of every case in the collection."""
    iterator = iter(built)
    first = next(iterator, None)
    if first is None:
        return frozenset()
    shared = set(first.case_attrs)
    for case in iterator:
        shared &= set(case.case_attrs)
    return frozenset(shared)


def extract_log(table: EventTable, id_attr: str) -> StructuredEventLog:
    """Build the structured event log for one case identifier choice.

    Rejects unknown attributes, the time attribute (time values never
    identify a case), and tables lacking any further attribute to describe
    what happened.  Events with an undefined identifier are counted, not
    silently dropped.
    """
    if id_attr == TIME_ATTR:
        raise TimeAsCaseId()
    names = attribute_names(table)
    if id_attr not in names:
        raise UnknownAttribute(id_attr)
    if not names - {TIME_ATTR, id_attr}:
        raise MissingActivityAttribute(id_attr)

    groups = _groups(table, id_attr)
    uncorrelated = len(table) - sum(len(g) for g in groups.values())
    if uncorrelated:
        logger.warning("%d events have no %r value and were left out", uncorrelated, id_attr)

    built = tuple(
        make_case(id_attr, id_value, build_trace(groups[id_value]))
        for id_value in sorted(groups, key=AttributeValue.sort_key)
    )
    return StructuredEventLog(id_attr, built, shared_attr_names(built), uncorrelated)


@dataclass(frozen=True)
class PartialOrderTrace:
    """A trace as a strict partial order: event pairs (a, b) with a strictly
    earlier timestamp than b.  Equal-timestamp events stay unordered."""

    events: tuple[Event, ...]
    order: frozenset[tuple[int, int]]

    def precedes(self, a: Event, b: Event) -> bool:
        return (a.index, b.index) in self.order


def partial_order_trace(events) -> PartialOrderTrace:
    """The strict partial order induced by timestamps over an event set."""
    ordered = build_trace(events)
    pairs = {
        (a.index, b.index)
        for i, a in enumerate(ordered)
        for b in ordered[i + 1:]
        if a.time() < b.time()
    }
    return PartialOrderTrace(ordered, frozenset(pairs))


def linearizations(pot: PartialOrderTrace) -> list[tuple[Event, ...]]:
    """Every total order of the events compatible with the partial order.
    Intended for small traces; the count can grow factorially."""
    out: list[tuple[Event, ...]] = []

    def step(prefix: list[Event], pool: list[Event]) -> None:
        if not pool:
            out.append(tuple(prefix))
            return
        for i, candidate in enumerate(pool):
            if any(pot.precedes(other, candidate) for other in pool if other is not candidate):
                continue
            step(prefix + [candidate], pool[:i] + pool[i + 1:])

    step([], list(pot.events))
    return out


def check_log_invariants(log: StructuredEventLog) -> list[str]:
    """Violated structural rules, as human-readable strings (empty = sound)."""
    problems: list[str] = []
    seen_ids: set[AttributeValue] = set()
    seen_events: set[int] = set()
    for case in log:
        if case.id_value in seen_ids:
            problems.append(f"duplicate case {case.id_value!r}")
        seen_ids.add(case.id_value)
        for event in case.trace:
            if event.index in seen_events:
                problems.append(f"event {event.index} appears in two cases")
            seen_events.add(event.index)
            if event.get(log.id_attr) != case.id_value:
                problems.append(f"event {event.index} not correlated to {case.id_value!r}")
        for a, b in zip(case.trace, case.trace[1:]):
            if a.time() > b.time():
                problems.append(f"trace of {case.id_value!r} not time-ordered")
        if case.case_attrs.get(log.id_attr) != case.id_value:
            problems.append(f"case {case.id_value!r} lost its identifier attribute")
        for name, value in case.case_attrs.items():
            if case.trace and any(event.get(name) != value for event in case.trace):
                problems.append(f"case {case.id_value!r} attribute {name!r} not constant")
    if log.id_attr not in log.global_case_attrs and log.cases:
        problems.append("identifier missing from shared case attributes")
    if frozenset(log.global_case_attrs) != shared_attr_names(log.cases):
        problems.append("shared case attribute names out of date")
    return problems
