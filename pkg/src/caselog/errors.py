"""Exception types raised across the toolkit."""

from __future__ import annotations


class CaselogError(Exception):
    """Base class for all toolkit errors."""


class InvalidEventTable(CaselogError):
    """Event table construction violated a table invariant."""


class MissingTimeColumn(CaselogError):
    def __init__(self, column: str):
        super().__init__(f"time column {column!r} not found in header")
        self.column = column


class UnparseableTimestamp(CaselogError):
    def __init__(self, row: int, cell: str):
        super().__init__(f"row {row}: cannot parse timestamp {cell!r}")
        self.row = row
        self.cell = cell


class RowWithOnlyTime(CaselogError):
    def __init__(self, row: int):
        super().__init__(f"row {row}: no attribute besides the timestamp is defined")
        self.row = row


class UnknownAttribute(CaselogError):
    def __init__(self, name: str):
        super().__init__(f"attribute {name!r} is not defined by any event")
        self.name = name


class TimeAsCaseId(CaselogError):
    def __init__(self) -> None:
        super().__init__(
            "the time attribute cannot serve as case identifier; "
            "nearly every event would become its own case"
        )


class MissingActivityAttribute(CaselogError):
    def __init__(self, id_attr: str):
        super().__init__(
            f"no attribute besides time and {id_attr!r} exists to describe events"
        )
        self.id_attr = id_attr


class EmptyEventSet(CaselogError):
    def __init__(self) -> None:
        super().__init__("cannot build a trace from an empty event set")


class PredicateArityError(CaselogError):
    """A case-level operation got an event-level predicate, or vice versa."""


class PredicateSchemaError(CaselogError):
    """A predicate or stack JSON document does not match the schema."""


class StackStepError(CaselogError):
    """An error raised while validating or applying one stack step."""

    def __init__(self, step: int, message: str):
        super().__init__(f"step {step}: {message}")
        self.step = step
