"""Attribute profiling: the first step of picking a case identifier.

For every attribute the report gives defined/distinct counts and a type, and
ranks the non-time attributes as case-identifier candidates.  Identifier-
shaped values (integers, or letter-prefixed codes like "A7001") rank first.
An attribute whose every value co-occurs with several values of the top
candidate repeats across entities and is probably not an entity type itself.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .model import (
    TIME_ATTR,
    AttributeValue,
    EventTable,
    Tag,
    attribute_order,
)

_ID_SHAPED_TEXT = re.compile(r"[A-Za-z]+\d+\Z")

_TYPE_NAMES = {
    Tag.TEXT: "text",
    Tag.INT: "int",
    Tag.REAL: "real",
    Tag.TIME: "time",
    Tag.SET: "set",
}


@dataclass(frozen=True)
class AttributeProfile:
    """Report row for one attribute."""

    name: str
    defined: int
    distinct: int
    type_name: str
    rank: int | None
    repeats_across_entities: bool

    def line(self) -> str:
        parts = [f"{self.name}: {self.defined} defined, {self.distinct} distinct, {self.type_name}"]
        if self.repeats_across_entities:
            parts.append("likely not an entity type")
        return ", ".join(parts)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "defined": self.defined,
            "distinct": self.distinct,
            "type": self.type_name,
            "rank": self.rank,
            "repeats_across_entities": self.repeats_across_entities,
        }


def _is_id_shaped(value: AttributeValue) -> bool:
    if value.tag is Tag.INT:
        return True
    return value.tag is Tag.TEXT and bool(_ID_SHAPED_TEXT.fullmatch(value.payload))


def _values_of(table: EventTable, name: str) -> list[AttributeValue]:
    return [e.get(name) for e in table if e.get(name).is_defined()]


def attribute_report(table: EventTable) -> list[AttributeProfile]:
    """Profiles for all attributes: ranked identifier candidates first, the
    time attribute last."""
    names = attribute_order(table)
    stats: dict[str, tuple[int, int, str, float]] = {}
    for name in names:
        values = _values_of(table, name)
        distinct = set(values)
        tags = {v.tag for v in distinct}
        type_name = _TYPE_NAMES[tags.pop()] if len(tags) == 1 else "mixed"
        id_fraction = (
            sum(1 for v in distinct if _is_id_shaped(v)) / len(distinct) if distinct else 0.0
        )
        stats[name] = (len(values), len(distinct), type_name, id_fraction)

    candidates = sorted(
        (n for n in names if n != TIME_ATTR),
        key=lambda n: (-stats[n][3], -stats[n][0], -stats[n][1], n),
    )
    top = candidates[0] if candidates else None

    profiles = []
    for rank, name in enumerate(candidates, start=1):
        defined, distinct, type_name, _ = stats[name]
        profiles.append(
            AttributeProfile(
                name, defined, distinct, type_name, rank,
                _repeats_across(table, name, top),
            )
        )
    if TIME_ATTR in names:
        defined, distinct, type_name, _ = stats[TIME_ATTR]
        profiles.append(AttributeProfile(TIME_ATTR, defined, distinct, type_name, None, False))
    return profiles


def _repeats_across(table: EventTable, name: str, top: str | None) -> bool:
    """True when every value of the attribute co-occurs with two or more
    values of the top identifier candidate."""
    if top is None or name == top:
        return False
    partners: dict[AttributeValue, set[AttributeValue]] = {}
    for event in table:
        value = event.get(name)
        anchor = event.get(top)
        if value.is_defined() and anchor.is_defined():
            partners.setdefault(value, set()).add(anchor)
    return bool(partners) and all(len(p) >= 2 for p in partners.values())


def case_id_warnings(table: EventTable, id_attr: str) -> list[str]:
    """Soft warnings about a case identifier choice (never blocking)."""
    warnings = []
    for profile in attribute_report(table):
        if profile.name != id_attr:
            continue
        if profile.repeats_across_entities:
            warnings.append(
                f"{id_attr!r} values repeat across entities; it may not identify one"
            )
        if profile.distinct == 1:
            warnings.append(f"{id_attr!r} has a single value; all events form one case")
    return warnings
