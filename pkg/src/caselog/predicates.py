"""Predicates over cases and events, with a JSON wire form.

Case-level predicates decide whole cases (a positional event test, duration,
variant frequency, case attributes); event-level predicates decide single
events (own attributes, definedness, class frequency in the log, last
occurrence of a class in the trace).  Boolean connectives work at either
level but may not mix the two.  Frequency and occurrence nodes name their
own classifier and read the log as it stands when the enclosing step runs.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass

from .classify import Classifier, EventClass, classify, simple_trace
from .errors import PredicateArityError, PredicateSchemaError
from .extract import Case, StructuredEventLog
from .model import (
    UNDEFINED,
    AttributeValue,
    Event,
    Tag,
    integer,
    real,
    text,
    time_ms,
    value_set,
)


class Level(enum.Enum):
    CASE = "case"
    EVENT = "event"
    ANY = "any"


def _merge_levels(levels: list[Level]) -> Level:
    concrete = {lvl for lvl in levels if lvl is not Level.ANY}
    if len(concrete) > 1:
        raise PredicateArityError("case-level and event-level parts cannot mix")
    return next(iter(concrete), Level.ANY)


OPS = ("eq", "ne", "lt", "le", "gt", "ge", "in", "not-in")

_ORDERED_TAGS = {Tag.INT, Tag.REAL, Tag.TIME, Tag.TEXT}


def compare(op: str, value: AttributeValue, operand) -> bool:
    """Apply one comparison.  Undefined values satisfy nothing; values of
    different tags are unequal and never ordered."""
    if op not in OPS:
        raise PredicateSchemaError(f"unknown comparison {op!r}")
    if not value.is_defined():
        return False
    if op in ("in", "not-in"):
        hit = value in operand
        return hit if op == "in" else not hit
    if value.tag is not operand.tag:
        return op == "ne"
    if op == "eq":
        return value == operand
    if op == "ne":
        return value != operand
    if value.tag not in _ORDERED_TAGS:
        return False
    a, b = value.payload, operand.payload
    return {"lt": a < b, "le": a <= b, "gt": a > b, "ge": a >= b}[op]


class StepContext:
    """Evaluation context for one filtering step: the log at the step's
    start, with per-classifier variant and class frequencies computed once."""

    def __init__(self, log: StructuredEventLog):
        self.log = log
        self._variant_counts: dict[Classifier, Counter] = {}
        self._class_counts: dict[Classifier, Counter] = {}

    def variant_multiplicity(self, classifier: Classifier, case: Case) -> int:
        counts = self._variant_counts.get(classifier)
        if counts is None:
            counts = Counter(simple_trace(classifier, c) for c in self.log)
            self._variant_counts[classifier] = counts
        return counts[simple_trace(classifier, case)]

    def class_count(self, classifier: Classifier, cls: EventClass) -> int:
        counts = self._class_counts.get(classifier)
        if counts is None:
            counts = Counter()
            for case in self.log:
                for event in case.trace:
                    c = classify(classifier, event)
                    if c is not None:
                        counts[c] += 1
            self._class_counts[classifier] = counts
        return counts[cls]


class Predicate:
    """Base of all predicate nodes."""

    @property
    def level(self) -> Level:
        return Level.ANY

    def test_case(self, ctx: StepContext, case: Case) -> bool:
        raise PredicateArityError(f"{type(self).__name__} cannot decide a whole case")

    def test_event(self, ctx: StepContext, case: Case, event: Event) -> bool:
        raise PredicateArityError(f"{type(self).__name__} cannot decide a single event")


@dataclass(frozen=True)
class TruePred(Predicate):
    def test_case(self, ctx, case):
        return True

    def test_event(self, ctx, case, event):
        return True


@dataclass(frozen=True)
class FalsePred(Predicate):
    def test_case(self, ctx, case):
        return False

    def test_event(self, ctx, case, event):
        return False


@dataclass(frozen=True)
class Not(Predicate):
    child: Predicate

    @property
    def level(self) -> Level:
        return self.child.level

    def test_case(self, ctx, case):
        if self.level is Level.EVENT:
            raise PredicateArityError("event-level predicate applied to a case")
        return not self.child.test_case(ctx, case)

    def test_event(self, ctx, case, event):
        if self.level is Level.CASE:
            raise PredicateArityError("case-level predicate applied to an event")
        return not self.child.test_event(ctx, case, event)


class _Connective(Predicate):
    children: tuple[Predicate, ...]

    @property
    def level(self) -> Level:
        return _merge_levels([child.level for child in self.children])

    def _check_case(self):
        if self.level is Level.EVENT:
            raise PredicateArityError("event-level predicate applied to a case")

    def _check_event(self):
        if self.level is Level.CASE:
            raise PredicateArityError("case-level predicate applied to an event")


@dataclass(frozen=True)
class And(_Connective):
    children: tuple[Predicate, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))
        _merge_levels([child.level for child in self.children])

    def test_case(self, ctx, case):
        self._check_case()
        return all(child.test_case(ctx, case) for child in self.children)

    def test_event(self, ctx, case, event):
        self._check_event()
        return all(child.test_event(ctx, case, event) for child in self.children)


@dataclass(frozen=True)
class Or(_Connective):
    children: tuple[Predicate, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))
        _merge_levels([child.level for child in self.children])

    def test_case(self, ctx, case):
        self._check_case()
        return any(child.test_case(ctx, case) for child in self.children)

    def test_event(self, ctx, case, event):
        self._check_event()
        return any(child.test_event(ctx, case, event) for child in self.children)


@dataclass(frozen=True)
class Attr(Predicate):
    """Compare one attribute of the event itself."""

    name: str
    op: str
    operand: AttributeValue | frozenset[AttributeValue]

    @property
    def level(self) -> Level:
        return Level.EVENT

    def test_event(self, ctx, case, event):
        return compare(self.op, event.get(self.name), self.operand)


@dataclass(frozen=True)
class Defined(Predicate):
    """True when the event carries a defined value for the attribute."""

    name: str

    @property
    def level(self) -> Level:
        return Level.EVENT

    def test_event(self, ctx, case, event):
        return event.get(self.name).is_defined()


@dataclass(frozen=True)
class CaseAttr(Predicate):
    """Compare a case-level attribute (constant across the case's events);
    the case identifier itself is also addressable by name."""

    name: str
    op: str
    operand: AttributeValue | frozenset[AttributeValue]

    @property
    def level(self) -> Level:
        return Level.CASE

    def test_case(self, ctx, case):
        if self.name == ctx.log.id_attr:
            value = case.id_value
        else:
            value = case.case_attrs.get(self.name, UNDEFINED)
        return compare(self.op, value, self.operand)


@dataclass(frozen=True)
class At(Predicate):
    """Apply an event-level predicate at one trace position ("first",
    "last", or an index; negative indices count from the end)."""

    position: str | int
    pred: Predicate

    def __post_init__(self) -> None:
        if self.pred.level is Level.CASE:
            raise PredicateArityError("positional test needs an event-level predicate")
        if isinstance(self.position, str) and self.position not in ("first", "last"):
            raise PredicateSchemaError(f"unknown position {self.position!r}")

    @property
    def level(self) -> Level:
        return Level.CASE

    def test_case(self, ctx, case):
        if self.position == "first":
            idx = 0
        elif self.position == "last":
            idx = len(case.trace) - 1
        else:
            idx = self.position
        if not -len(case.trace) <= idx < len(case.trace):
            return False
        return self.pred.test_event(ctx, case, case.trace[idx])


@dataclass(frozen=True)
class TraceLength(Predicate):
    """Compare the number of events in the case's trace."""

    op: str
    count: int

    @property
    def level(self) -> Level:
        return Level.CASE

    def test_case(self, ctx, case):
        return compare(self.op, integer(len(case.trace)), integer(self.count))


@dataclass(frozen=True)
class Duration(Predicate):
    """Compare the case's span (last minus first timestamp, milliseconds).
    An empty trace has no span and matches nothing."""

    op: str
    ms: int

    @property
    def level(self) -> Level:
        return Level.CASE

    def test_case(self, ctx, case):
        if not case.trace:
            return False
        span = case.trace[-1].time() - case.trace[0].time()
        return compare(self.op, integer(span), integer(self.ms))


@dataclass(frozen=True)
class VariantFreq(Predicate):
    """Compare how many cases of the log share this case's variant under
    the named classifier."""

    classifier: Classifier
    op: str
    count: int

    @property
    def level(self) -> Level:
        return Level.CASE

    def test_case(self, ctx, case):
        multiplicity = ctx.variant_multiplicity(self.classifier, case)
        return compare(self.op, integer(multiplicity), integer(self.count))


@dataclass(frozen=True)
class ClassFreq(Predicate):
    """Compare how often the event's class occurs across the whole log.
    Events without a class never match."""

    classifier: Classifier
    op: str
    count: int

    @property
    def level(self) -> Level:
        return Level.EVENT

    def test_event(self, ctx, case, event):
        cls = classify(self.classifier, event)
        if cls is None:
            return False
        return compare(self.op, integer(ctx.class_count(self.classifier, cls)), integer(self.count))


@dataclass(frozen=True)
class LastOccurrence(Predicate):
    """True when no later event of the same trace has the same class.
    Events without a class count as last occurrences."""

    classifier: Classifier

    @property
    def level(self) -> Level:
        return Level.EVENT

    def test_event(self, ctx, case, event):
        cls = classify(self.classifier, event)
        if cls is None:
            return True
        seen = False
        for other in case.trace:
            if seen and classify(self.classifier, other) == cls:
                return False
            if other is event:
                seen = True
        return True


def value_to_json(value: AttributeValue):
    if value.tag in (Tag.TEXT, Tag.INT, Tag.REAL):
        return value.payload
    if value.tag is Tag.TIME:
        return {"time": value.payload}
    if value.tag is Tag.SET:
        return {"set": sorted((value_to_json(v) for v in value.payload), key=repr)}
    return None


def value_from_json(raw) -> AttributeValue:
    if raw is None:
        return UNDEFINED
    if isinstance(raw, bool):
        raise PredicateSchemaError("boolean is not an attribute value")
    if isinstance(raw, int):
        return integer(raw)
    if isinstance(raw, float):
        return real(raw)
    if isinstance(raw, str):
        return text(raw)
    if isinstance(raw, dict) and set(raw) == {"time"}:
        if isinstance(raw["time"], bool) or not isinstance(raw["time"], int):
            raise PredicateSchemaError("time value must be milliseconds")
        return time_ms(raw["time"])
    if isinstance(raw, dict) and set(raw) == {"set"}:
        if not isinstance(raw["set"], list):
            raise PredicateSchemaError("set value must be a list")
        return value_set(value_from_json(item) for item in raw["set"])
    raise PredicateSchemaError(f"not an attribute value: {raw!r}")


def _operand_from_json(op: str, raw):
    if op in ("in", "not-in"):
        if not isinstance(raw, list):
            raise PredicateSchemaError(f"{op} needs a list of values")
        return frozenset(value_from_json(item) for item in raw)
    return value_from_json(raw)


def _operand_to_json(op: str, operand):
    if op in ("in", "not-in"):
        return sorted((value_to_json(v) for v in operand), key=repr)
    return value_to_json(operand)


def predicate_to_json(pred: Predicate) -> dict:
    if isinstance(pred, TruePred):
        return {"kind": "true"}
    if isinstance(pred, FalsePred):
        return {"kind": "false"}
    if isinstance(pred, Not):
        return {"kind": "not", "child": predicate_to_json(pred.child)}
    if isinstance(pred, And):
        return {"kind": "and", "children": [predicate_to_json(c) for c in pred.children]}
    if isinstance(pred, Or):
        return {"kind": "or", "children": [predicate_to_json(c) for c in pred.children]}
    if isinstance(pred, Attr):
        return {"kind": "attr", "name": pred.name, "op": pred.op,
                "value": _operand_to_json(pred.op, pred.operand)}
    if isinstance(pred, Defined):
        return {"kind": "defined", "name": pred.name}
    if isinstance(pred, CaseAttr):
        return {"kind": "case-attr", "name": pred.name, "op": pred.op,
                "value": _operand_to_json(pred.op, pred.operand)}
    if isinstance(pred, At):
        return {"kind": "at", "position": pred.position, "pred": predicate_to_json(pred.pred)}
    if isinstance(pred, TraceLength):
        return {"kind": "trace-length", "op": pred.op, "count": pred.count}
    if isinstance(pred, Duration):
        return {"kind": "duration", "op": pred.op, "ms": pred.ms}
    if isinstance(pred, VariantFreq):
        return {"kind": "variant-freq", "classifier": list(pred.classifier.attrs),
                "op": pred.op, "count": pred.count}
    if isinstance(pred, ClassFreq):
        return {"kind": "class-freq", "classifier": list(pred.classifier.attrs),
                "op": pred.op, "count": pred.count}
    if isinstance(pred, LastOccurrence):
        return {"kind": "last-occurrence", "classifier": list(pred.classifier.attrs)}
    raise PredicateSchemaError(f"unknown predicate type {type(pred).__name__}")


def _require(raw: dict, key: str, types):
    if key not in raw:
        raise PredicateSchemaError(f"predicate {raw.get('kind')!r} needs {key!r}")
    if not isinstance(raw[key], types):
        raise PredicateSchemaError(f"bad type for {key!r} in {raw.get('kind')!r}")
    return raw[key]


def _op_of(raw: dict) -> str:
    op = _require(raw, "op", str)
    if op not in OPS:
        raise PredicateSchemaError(f"unknown comparison {op!r}")
    return op


def _count_of(raw: dict) -> int:
    count = _require(raw, "count", int)
    if isinstance(count, bool):
        raise PredicateSchemaError("count must be an integer")
    return count


def _classifier_of(raw: dict) -> Classifier:
    names = _require(raw, "classifier", list)
    if not names or not all(isinstance(n, str) for n in names):
        raise PredicateSchemaError("classifier must be a non-empty list of attribute names")
    return Classifier(tuple(names))


def predicate_from_json(raw) -> Predicate:
    if not isinstance(raw, dict):
        raise PredicateSchemaError("predicate must be an object")
    kind = raw.get("kind")
    if kind == "true":
        return TruePred()
    if kind == "false":
        return FalsePred()
    if kind == "not":
        return Not(predicate_from_json(_require(raw, "child", dict)))
    if kind in ("and", "or"):
        children = _require(raw, "children", list)
        built = tuple(predicate_from_json(child) for child in children)
        return And(built) if kind == "and" else Or(built)
    if kind == "attr":
        op = _op_of(raw)
        return Attr(_require(raw, "name", str), op, _operand_from_json(op, raw.get("value")))
    if kind == "defined":
        return Defined(_require(raw, "name", str))
    if kind == "case-attr":
        op = _op_of(raw)
        return CaseAttr(_require(raw, "name", str), op, _operand_from_json(op, raw.get("value")))
    if kind == "at":
        position = _require(raw, "position", (str, int))
        if isinstance(position, bool):
            raise PredicateSchemaError("position must be 'first', 'last', or an index")
        return At(position, predicate_from_json(_require(raw, "pred", dict)))
    if kind == "trace-length":
        return TraceLength(_op_of(raw), _count_of(raw))
    if kind == "duration":
        ms = _require(raw, "ms", int)
        if isinstance(ms, bool) or ms < 0:
            raise PredicateSchemaError("duration needs a non-negative millisecond count")
        return Duration(_op_of(raw), ms)
    if kind == "variant-freq":
        return VariantFreq(_classifier_of(raw), _op_of(raw), _count_of(raw))
    if kind == "class-freq":
        return ClassFreq(_classifier_of(raw), _op_of(raw), _count_of(raw))
    if kind == "last-occurrence":
        return LastOccurrence(_classifier_of(raw))
    raise PredicateSchemaError(f"unknown predicate kind {kind!r}")
