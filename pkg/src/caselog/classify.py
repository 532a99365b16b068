"""Event classifiers, simple traces, and trace variants.

A classifier names one or more non-time attributes.  The class of an event
is the tuple of those attribute values, shown joined by the separator; if
any named attribute is ⊥ the event has no class and drops out of simple
traces.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .extract import Case, StructuredEventLog
from .model import AttributeValue, Event, render_value


@dataclass(frozen=True)
class Classifier:
    """Attribute names whose joined values name an event's class."""

    attrs: tuple[str, ...]
    separator: str = "+"

    def __post_init__(self) -> None:
        object.__setattr__(self, "attrs", tuple(self.attrs))
        if not self.attrs:
            raise ValueError("classifier needs at least one attribute")
        if len(set(self.attrs)) != len(self.attrs):
            raise ValueError("classifier attributes must not repeat")


@dataclass(frozen=True)
class EventClass:
    """One class: the value tuple compared exactly, plus a joined label used
    only for display and export (labels may collide, tuples cannot)."""

    parts: tuple[AttributeValue, ...]
    label: str = field(compare=False)

    def __lt__(self, other: "EventClass") -> bool:
        return (self.label, self.parts) < (other.label, other.parts)


def classify(cl: Classifier, event: Event) -> EventClass | None:
    """The event's class under the classifier, or None when any named
    attribute is undefined for the event."""
    parts = tuple(event.get(name) for name in cl.attrs)
    if not all(part.is_defined() for part in parts):
        return None
    label = cl.separator.join(render_value(part) for part in parts)
    return EventClass(parts, label)


def event_classes(log: StructuredEventLog, cl: Classifier) -> set[EventClass]:
    """The distinct classes occurring in any trace of the log."""
    found: set[EventClass] = set()
    for case in log:
        for event in case.trace:
            cls = classify(cl, event)
            if cls is not None:
                found.add(cls)
    return found


def simple_trace(
    cl: Classifier, case: Case, alphabet: set[EventClass] | None = None
) -> tuple[EventClass, ...]:
    """The case's trace with every event replaced by its class.  Classless
    events vanish, as does any class outside the alphabet when one is given."""
    out = []
    for event in case.trace:
        cls = classify(cl, event)
        if cls is not None and (alphabet is None or cls in alphabet):
            out.append(cls)
    return tuple(out)


@dataclass(frozen=True)
class SimpleEventLog:
    """Trace variants and their multiplicities under one classifier."""

    classifier: Classifier
    alphabet: frozenset[EventClass]
    variants: dict[tuple[EventClass, ...], int]

    def total_traces(self) -> int:
        return sum(self.variants.values())


def simple_log(log: StructuredEventLog, cl: Classifier) -> SimpleEventLog:
    """Collapse a structured log to its variant multiset."""
    counts: Counter[tuple[EventClass, ...]] = Counter()
    for case in log:
        counts[simple_trace(cl, case)] += 1
    return SimpleEventLog(cl, frozenset(event_classes(log, cl)), dict(counts))


def variants_text(simple: SimpleEventLog) -> str:
    """One line per variant: count, a tab, then class labels comma-joined.
    Lines sort by descending count, ties by label sequence."""
    rows = [
        (count, ",".join(cls.label for cls in variant))
        for variant, count in simple.variants.items()
    ]
    rows.sort(key=lambda row: (-row[0], row[1]))
    return "".join(f"{count}\t{joined}\n" for count, joined in rows)
