"""CSV parsing of raw event tables, table re-ordering, and CSV back-export."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .errors import MissingTimeColumn, RowWithOnlyTime, UnknownAttribute, UnparseableTimestamp
from .model import (
    AUX_ATTRS,
    RAW_TIME_ATTR,
    SOURCE_INDEX_ATTR,
    TIME_ATTR,
    AttributeValue,
    Event,
    EventTable,
    Tag,
    attribute_names,
    integer,
    real,
    render_time,
    text,
    time_ms,
)

#: Marker accepted in timestamp format lists; tried via datetime.fromisoformat.
ISO_8601 = "iso8601"

DEFAULT_TIME_FORMATS = ("%d/%m/%Y %H:%M", "%d/%m/%Y %H:%M:%S", ISO_8601)


@dataclass(frozen=True)
class CsvProfile:
    """How to read one CSV dialect: delimiter, timestamp formats (tried in
    order), the name of the time column, and the cell strings that mean ⊥."""

    delimiter: str = ","
    timestamp_formats: tuple[str, ...] = DEFAULT_TIME_FORMATS
    time_column: str = TIME_ATTR
    null_markers: frozenset[str] = frozenset({""})

    def __post_init__(self) -> None:
        if not self.timestamp_formats:
            raise ValueError("timestamp_formats must not be empty")
        if not self.time_column:
            raise ValueError("time_column must not be empty")
        object.__setattr__(self, "timestamp_formats", tuple(self.timestamp_formats))
        object.__setattr__(self, "null_markers", frozenset(self.null_markers))


def parse_timestamp(cell: str, formats: tuple[str, ...]) -> int | None:
    """UTC milliseconds for the first matching format, else None.  Naive
    timestamps are taken to be UTC."""
    for fmt in formats:
        if fmt == ISO_8601:
            try:
                dt = datetime.fromisoformat(cell.replace("Z", "+00:00"))
            except ValueError:
                continue
        else:
            try:
                dt = datetime.strptime(cell, fmt)
            except ValueError:
                continue
        if dt.tzinfo is None:
            dt = dt.replace(tzinfo=timezone.utc)
        return int(dt.timestamp() * 1000)
    return None


def _parse_cell(cell: str, formats: tuple[str, ...]) -> AttributeValue:
    # Int/Real only when re-rendering reproduces the cell, so that numeric
    # oddities like "007" or "1.50" survive a parse/export round trip as text.
    try:
        if str(int(cell)) == cell:
            return integer(int(cell))
    except ValueError:
        pass
    try:
        if repr(float(cell)) == cell:
            return real(float(cell))
    except ValueError:
        pass
    ms = parse_timestamp(cell, formats)
    if ms is not None:
        return time_ms(ms)
    return text(cell)


def parse_csv(data: bytes | str, profile: CsvProfile = CsvProfile()) -> EventTable:
    """One event per data row.  Cells matching a null marker become ⊥; other
    cells are typed Int, then Real, then Time, else Text.  The time column is
    renamed to "time", with the source string kept under "time:raw"."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    reader = csv.reader(io.StringIO(data), delimiter=profile.delimiter)
    try:
        header = next(reader)
    except StopIteration:
        raise MissingTimeColumn(profile.time_column)
    if profile.time_column not in header:
        raise MissingTimeColumn(profile.time_column)

    events = []
    shared_candidates = [name for name in header if name != profile.time_column]
    for row_no, row in enumerate(reader, start=1):
        attrs: dict[str, AttributeValue] = {}
        for name, cell in zip(header, row):
            if cell in profile.null_markers:
                continue
            if name == profile.time_column:
                ms = parse_timestamp(cell, profile.timestamp_formats)
                if ms is None:
                    raise UnparseableTimestamp(row_no, cell)
                attrs[TIME_ATTR] = time_ms(ms)
                attrs[RAW_TIME_ATTR] = text(cell)
            else:
                attrs[name] = _parse_cell(cell, profile.timestamp_formats)
        if TIME_ATTR not in attrs:
            raise UnparseableTimestamp(row_no, "")
        if not (set(attrs) - AUX_ATTRS - {TIME_ATTR}):
            raise RowWithOnlyTime(row_no)
        shared_candidates = [n for n in shared_candidates if n in attrs]
        events.append(Event(len(events), attrs))

    shared = shared_candidates[0] if shared_candidates else TIME_ATTR
    return EventTable(tuple(events), shared)


@dataclass(frozen=True)
class SortSpec:
    """Optional grouping attribute; events are always ordered by time within
    a group (and overall when no grouping is given)."""

    group_by: str | None = None
    then_by_time: bool = True

    def __post_init__(self) -> None:
        if not self.then_by_time:
            raise ValueError("time ordering is mandatory")


def sort_table(table: EventTable, spec: SortSpec = SortSpec()) -> EventTable:
    """Stable re-ordering: groups in order of first appearance (⊥ group
    values trail), then time, then original position.  Each event keeps its
    payload and records its pre-sort position under "source:index"."""
    if spec.group_by is not None and spec.group_by not in attribute_names(table):
        raise UnknownAttribute(spec.group_by)

    first_seen: dict[AttributeValue, int] = {}
    if spec.group_by is not None:
        for event in table:
            value = event.get(spec.group_by)
            if value.is_defined():
                first_seen.setdefault(value, event.index)

    def key(event: Event):
        if spec.group_by is None:
            group = 0
        else:
            value = event.get(spec.group_by)
            group = first_seen[value] if value.is_defined() else len(table)
        return (group, event.time(), event.index)

    reordered = sorted(table, key=key)
    events = tuple(
        event.with_attrs(
            {**event.attrs, SOURCE_INDEX_ATTR: integer(event.index)}, index=pos
        )
        for pos, event in enumerate(reordered)
    )
    return EventTable(events, table.shared_attr)


def export_events_csv(
    events,
    *,
    delimiter: str = ",",
    time_format: str = DEFAULT_TIME_FORMATS[0],
) -> str:
    """Events as CSV rows: columns in first-appearance order, timestamps
    re-emitted verbatim from "time:raw" when present."""
    events = list(events)
    columns: list[str] = []
    seen: set[str] = set()
    for event in events:
        for name in event.attrs:
            if name not in seen and name not in AUX_ATTRS:
                seen.add(name)
                columns.append(name)
    out = io.StringIO()
    writer = csv.writer(out, delimiter=delimiter, lineterminator="\n")
    writer.writerow(columns)
    for event in events:
        writer.writerow([_render_cell(event.get(name), event, name, time_format) for name in columns])
    return out.getvalue()


def export_table_csv(
    table: EventTable,
    *,
    delimiter: str = ",",
    time_format: str = DEFAULT_TIME_FORMATS[0],
) -> str:
    """The whole table back as CSV; with untouched tables this reproduces
    the parsed input up to column order."""
    return export_events_csv(table, delimiter=delimiter, time_format=time_format)


def _render_cell(value: AttributeValue, event: Event, name: str, time_format: str) -> str:
    if not value.is_defined():
        return ""
    if name == TIME_ATTR:
        raw = event.get(RAW_TIME_ATTR)
        if raw.tag is Tag.TEXT:
            return raw.payload
    if value.tag is Tag.TIME:
        dt = datetime.fromtimestamp(value.payload / 1000, tz=timezone.utc)
        return dt.strftime(time_format) if time_format != ISO_8601 else render_time(value.payload)
    from .model import render_value

    return render_value(value)
