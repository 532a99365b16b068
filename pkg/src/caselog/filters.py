"""Selection, projection, and aggregation over structured event logs.

Selection keeps whole cases satisfying a case-level predicate, untouched.
Projection keeps, inside every trace, the events satisfying an event-level
predicate; cases stay even when their trace empties.  Aggregation collapses
runs of same-class events.  Every operation maps a structured event log to
a structured event log over the same case identifier, so operations compose
into ordered stacks with per-step size statistics.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classify import Classifier, classify
from .errors import CaselogError, PredicateArityError, PredicateSchemaError, StackStepError
from .extract import StructuredEventLog, make_case, shared_attr_names
from .model import (
    RAW_TIME_ATTR,
    TIME_ATTR,
    Event,
    time_ms,
    value_set,
)
from .predicates import (
    Level,
    Predicate,
    StepContext,
    predicate_from_json,
    predicate_to_json,
)

POLICIES = ("keep-last", "keep-first", "merge")
MERGE_TIMESTAMPS = ("first", "last", "midpoint")


@dataclass(frozen=True)
class AggregationSpec:
    """How to collapse runs of same-class events inside each trace.

    Runs are maximal stretches of consecutive events sharing a class under
    the grouping classifier; events without a class never join a run.  A run
    of length one passes through untouched.  Longer runs are replaced per the
    policy: one of their events (keep-first / keep-last) or a merged event
    built from the last event, stamped per merge_timestamp, with each
    set_collect attribute replaced by the set of values seen in the run.
    """

    grouping: Classifier
    policy: str = "keep-last"
    merge_timestamp: str = "last"
    set_collect: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.policy not in POLICIES:
            raise ValueError(f"unknown aggregation policy {self.policy!r}")
        if self.merge_timestamp not in MERGE_TIMESTAMPS:
            raise ValueError(f"unknown merge timestamp rule {self.merge_timestamp!r}")
        object.__setattr__(self, "set_collect", tuple(self.set_collect))


@dataclass(frozen=True)
class Select:
    """Keep the cases satisfying a case-level predicate."""

    pred: Predicate

    kind = "select"


@dataclass(frozen=True)
class Project:
    """Keep, within every trace, the events satisfying an event-level
    predicate.  The case set never shrinks; traces may become empty."""

    pred: Predicate

    kind = "project"


@dataclass(frozen=True)
class Aggregate:
    spec: AggregationSpec

    kind = "aggregate"


Step = Select | Project | Aggregate


@dataclass(frozen=True)
class FilterStack:
    """An ordered list of steps, applied first to last."""

    steps: tuple[Step, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


@dataclass(frozen=True)
class StepStats:
    """Log size before and after one step."""

    kind: str
    cases_in: int
    cases_out: int
    events_in: int
    events_out: int

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "cases_in": self.cases_in,
            "cases_out": self.cases_out,
            "events_in": self.events_in,
            "events_out": self.events_out,
        }


def event_count(log: StructuredEventLog) -> int:
    return sum(len(case.trace) for case in log)


def select(log: StructuredEventLog, pred: Predicate) -> StructuredEventLog:
    """Keep cases satisfying the predicate, each one untouched; attributes
    shared by every surviving case are recomputed."""
    if pred.level is Level.EVENT:
        raise PredicateArityError("selection needs a case-level predicate")
    ctx = StepContext(log)
    kept = tuple(case for case in log if pred.test_case(ctx, case))
    return StructuredEventLog(
        log.id_attr, kept, shared_attr_names(kept), log.uncorrelated
    )


def project(log: StructuredEventLog, pred: Predicate) -> StructuredEventLog:
    """Filter every trace down to the events satisfying the predicate.  All
    cases remain; a case whose trace empties keeps only its identifier."""
    if pred.level is Level.CASE:
        raise PredicateArityError("projection needs an event-level predicate")
    ctx = StepContext(log)
    built = tuple(
        make_case(
            log.id_attr,
            case.id_value,
            tuple(e for e in case.trace if pred.test_event(ctx, case, e)),
        )
        for case in log
    )
    return StructuredEventLog(
        log.id_attr, built, shared_attr_names(built), log.uncorrelated
    )


def _runs(trace: tuple[Event, ...], grouping: Classifier) -> list[tuple[Event, ...]]:
    runs: list[list[Event]] = []
    prev = None
    for event in trace:
        cls = classify(grouping, event)
        if cls is not None and runs and prev == cls:
            runs[-1].append(event)
        else:
            runs.append([event])
        prev = cls
    return [tuple(run) for run in runs]


def _merge_run(run: tuple[Event, ...], spec: AggregationSpec) -> Event:
    first, last = run[0], run[-1]
    if spec.merge_timestamp == "first":
        stamp = first.time()
    elif spec.merge_timestamp == "midpoint":
        stamp = (first.time() + last.time()) // 2
    else:
        stamp = last.time()
    attrs = dict(last.attrs)
    attrs[TIME_ATTR] = time_ms(stamp)
    if stamp != last.time():
        attrs.pop(RAW_TIME_ATTR, None)
    for name in spec.set_collect:
        collected = [e.get(name) for e in run if e.get(name).is_defined()]
        if collected:
            attrs[name] = value_set(collected)
        else:
            attrs.pop(name, None)
    return last.with_attrs(attrs)


def aggregate(log: StructuredEventLog, spec: AggregationSpec) -> StructuredEventLog:
    """Collapse same-class runs in every trace per the aggregation policy."""
    built = []
    for case in log:
        trace: list[Event] = []
        for run in _runs(case.trace, spec.grouping):
            if len(run) == 1:
                trace.append(run[0])
            elif spec.policy == "keep-first":
                trace.append(run[0])
            elif spec.policy == "keep-last":
                trace.append(run[-1])
            else:
                trace.append(_merge_run(run, spec))
        built.append(make_case(log.id_attr, case.id_value, tuple(trace)))
    return StructuredEventLog(
        log.id_attr, tuple(built), shared_attr_names(built), log.uncorrelated
    )


def apply_stack(
    log: StructuredEventLog, stack: FilterStack
) -> tuple[StructuredEventLog, list[StepStats]]:
    """Run every step in order; errors carry the failing step's position."""
    stats: list[StepStats] = []
    current = log
    for index, step in enumerate(stack):
        cases_in, events_in = len(current), event_count(current)
        try:
            if isinstance(step, Select):
                current = select(current, step.pred)
            elif isinstance(step, Project):
                current = project(current, step.pred)
            elif isinstance(step, Aggregate):
                current = aggregate(current, step.spec)
            else:
                raise PredicateSchemaError(f"unknown step type {type(step).__name__}")
        except StackStepError:
            raise
        except CaselogError as exc:
            raise StackStepError(index, str(exc)) from exc
        stats.append(
            StepStats(step.kind, cases_in, len(current), events_in, event_count(current))
        )
    return current, stats


def stack_to_json(stack: FilterStack) -> dict:
    steps = []
    for step in stack:
        if isinstance(step, Select):
            steps.append({"kind": "select", "pred": predicate_to_json(step.pred)})
        elif isinstance(step, Project):
            steps.append({"kind": "project", "pred": predicate_to_json(step.pred)})
        else:
            spec = step.spec
            entry = {
                "kind": "aggregate",
                "grouping": list(spec.grouping.attrs),
                "policy": spec.policy,
            }
            if spec.policy == "merge":
                entry["timestamp"] = spec.merge_timestamp
                entry["collect"] = list(spec.set_collect)
            steps.append(entry)
    return {"steps": steps}


def _names_from_json(raw, what: str) -> tuple[str, ...]:
    if not isinstance(raw, list) or not all(isinstance(n, str) for n in raw):
        raise PredicateSchemaError(f"{what} must be a list of attribute names")
    return tuple(raw)


def _step_from_json(entry) -> Step:
    if not isinstance(entry, dict):
        raise PredicateSchemaError("each step must be an object")
    kind = entry.get("kind")
    if kind == "select":
        if "pred" not in entry:
            raise PredicateSchemaError("select step needs 'pred'")
        pred = predicate_from_json(entry["pred"])
        if pred.level is Level.EVENT:
            raise PredicateArityError("selection needs a case-level predicate")
        return Select(pred)
    if kind == "project":
        if "pred" not in entry:
            raise PredicateSchemaError("project step needs 'pred'")
        pred = predicate_from_json(entry["pred"])
        if pred.level is Level.CASE:
            raise PredicateArityError("projection needs an event-level predicate")
        return Project(pred)
    if kind == "aggregate":
        grouping = _names_from_json(entry.get("grouping"), "grouping")
        if not grouping:
            raise PredicateSchemaError("grouping needs at least one attribute")
        policy = entry.get("policy", "keep-last")
        timestamp = entry.get("timestamp", "last")
        collect = _names_from_json(entry.get("collect", []), "collect")
        if policy not in POLICIES:
            raise PredicateSchemaError(f"unknown aggregation policy {policy!r}")
        if timestamp not in MERGE_TIMESTAMPS:
            raise PredicateSchemaError(f"unknown merge timestamp rule {timestamp!r}")
        return Aggregate(AggregationSpec(Classifier(grouping), policy, timestamp, collect))
    raise PredicateSchemaError(f"unknown step kind {kind!r}")


def stack_from_json(raw) -> FilterStack:
    if not isinstance(raw, dict) or not isinstance(raw.get("steps"), list):
        raise PredicateSchemaError("stack must be an object with a 'steps' list")
    steps = []
    for position, entry in enumerate(raw["steps"]):
        try:
            steps.append(_step_from_json(entry))
        except StackStepError:
            raise
        except CaselogError as exc:
            raise StackStepError(position, str(exc)) from exc
    return FilterStack(tuple(steps))
