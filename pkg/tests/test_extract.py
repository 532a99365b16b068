"""Case correlation, trace building, and structured log extraction."""

import pytest

from caselog import (
    EmptyEventSet,
    MissingActivityAttribute,
    TIME_ATTR,
    TimeAsCaseId,
    UnknownAttribute,
    build_trace,
    cases,
    check_log_invariants,
    constant_attrs,
    correlate,
    extract_log,
    integer,
    linearizations,
    make_case,
    parse_csv,
    partial_order_trace,
    shared_attr_names,
    text,
    time_ms,
)
from caselog.model import Event


SRC = (
    "case,time,act,who\n"
    "1,02/01/1970 00:01,a,ann\n"
    "2,02/01/1970 00:02,a,bob\n"
    "1,02/01/1970 00:03,b,ann\n"
    ",02/01/1970 00:04,stray,cid\n"
    "2,02/01/1970 00:05,b,\n"
)


@pytest.fixture()
def table():
    return parse_csv(SRC)


class TestCorrelation:
    def test_cases_are_the_defined_id_values(self, table):
        assert cases(table, "case") == {integer(1), integer(2)}

    def test_unknown_attribute(self, table):
        with pytest.raises(UnknownAttribute):
            cases(table, "nope")

    def test_correlate_collects_matching_events(self, table):
        got = correlate(table, "case", integer(1))
        assert {e.index for e in got} == {0, 2}

    def test_correlate_unknown_value_is_empty(self, table):
        assert correlate(table, "case", integer(9)) == set()


class TestBuildTrace:
    def test_orders_by_time(self, table):
        trace = build_trace(correlate(table, "case", integer(2)))
        assert [e.get("act").payload for e in trace] == ["a", "b"]

    def test_tie_breaks_on_index(self):
        a = Event(0, {TIME_ATTR: time_ms(5), "x": text("p")})
        b = Event(1, {TIME_ATTR: time_ms(5), "x": text("q")})
        assert build_trace({b, a}) == (a, b)

    def test_empty_set_rejected(self):
        with pytest.raises(EmptyEventSet):
            build_trace(set())


class TestCaseAttrs:
    def test_constant_attrs_keeps_identical_defined_values(self, table):
        trace = build_trace(correlate(table, "case", integer(1)))
        got = constant_attrs(trace)
        assert got["case"] == integer(1)
        assert got["who"] == text("ann")
        assert "act" not in got
        assert TIME_ATTR not in got

    def test_attr_defined_on_some_events_only_is_not_constant(self, table):
        trace = build_trace(correlate(table, "case", integer(2)))
        assert "who" not in constant_attrs(trace)

    def test_make_case_always_includes_the_id(self, table):
        trace = build_trace(correlate(table, "case", integer(2)))
        c = make_case("case", integer(2), trace)
        assert c.id_value == integer(2)
        assert c.case_attrs["case"] == integer(2)

    def test_shared_attr_names_intersects_keysets(self, table):
        log = extract_log(table, "case")
        assert shared_attr_names(log.cases) == frozenset({"case"})


class TestExtractLog:
    def test_golden_small_log(self, table):
        log = extract_log(table, "case")
        assert log.id_attr == "case"
        assert log.case_ids() == [integer(1), integer(2)]
        assert log.uncorrelated == 1
        assert log.global_case_attrs == frozenset({"case"})
        by_id = {c.id_value: c for c in log.cases}
        assert [e.get("act").payload for e in by_id[integer(1)].trace] == ["a", "b"]

    def test_global_attrs_allow_differing_values(self):
        log = extract_log(
            parse_csv(
                "case,time,act,kind\n"
                "1,02/01/1970 00:01,a,gold\n"
                "2,02/01/1970 00:02,a,iron\n"
            ),
            "case",
        )
        assert log.global_case_attrs == frozenset({"case", "act", "kind", TIME_ATTR})

    def test_cases_sorted_by_value(self):
        log = extract_log(
            parse_csv(
                "case,time,act\n"
                "zz,02/01/1970 00:01,a\n"
                "9,02/01/1970 00:02,a\n"
            ),
            "case",
        )
        assert log.case_ids() == [integer(9), text("zz")]

    def test_time_as_case_id_rejected(self, table):
        with pytest.raises(TimeAsCaseId):
            extract_log(table, TIME_ATTR)

    def test_unknown_id_attr_rejected(self, table):
        with pytest.raises(UnknownAttribute):
            extract_log(table, "nope")

    def test_id_only_table_rejected(self):
        tbl = parse_csv("case,time\n1,02/01/1970 00:01\n2,02/01/1970 00:02\n")
        with pytest.raises(MissingActivityAttribute):
            extract_log(tbl, "case")

    def test_uncorrelated_events_logged(self, table, caplog):
        with caplog.at_level("WARNING"):
            extract_log(table, "case")
        assert any("left out" in r.getMessage() for r in caplog.records)

    def test_invariants_hold(self, table):
        assert check_log_invariants(extract_log(table, "case")) == []


class TestPartialOrder:
    def trace(self):
        return (
            Event(0, {TIME_ATTR: time_ms(1), "a": text("p")}),
            Event(1, {TIME_ATTR: time_ms(2), "a": text("q")}),
            Event(2, {TIME_ATTR: time_ms(2), "a": text("r")}),
        )

    def test_strictly_earlier_events_precede(self):
        trace = self.trace()
        pot = partial_order_trace(trace)
        assert pot.precedes(trace[0], trace[1])
        assert pot.precedes(trace[0], trace[2])
        assert not pot.precedes(trace[1], trace[0])

    def test_equal_timestamps_are_unordered(self):
        trace = self.trace()
        pot = partial_order_trace(trace)
        assert not pot.precedes(trace[1], trace[2])
        assert not pot.precedes(trace[2], trace[1])

    def test_linearizations_cover_both_tie_orders(self):
        trace = self.trace()
        lins = linearizations(partial_order_trace(trace))
        assert len(lins) == 2
        assert build_trace(set(trace)) in lins
        assert all(lin[0] == trace[0] for lin in lins)

    def test_totally_ordered_trace_has_one_linearization(self):
        trace = (
            Event(0, {TIME_ATTR: time_ms(1), "a": text("p")}),
            Event(1, {TIME_ATTR: time_ms(2), "a": text("q")}),
        )
        assert linearizations(partial_order_trace(trace)) == [trace]
