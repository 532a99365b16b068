"""Command-line front end.

One command covering the whole path from raw CSV to filtered variants; the
mode follows from the flags given.  Without --case-id the input is profiled
(attribute report).  With --case-id and --classifier the trace variants are
printed; --stack applies a filter stack first, and --format switches the
output between variants, CSV, XES, and summary statistics.  Data goes to
stdout, diagnostics to stderr, so outputs pipe cleanly.

Exit codes: 0 success, 1 data error (unreadable input, unknown attribute),
2 usage or schema error (bad flags, malformed stack file).
"""

from __future__ import annotations

import json
import sys

import click

from .classify import Classifier, simple_log, variants_text
from .csv_io import DEFAULT_TIME_FORMATS, CsvProfile, export_events_csv, parse_csv
from .errors import (
    CaselogError,
    PredicateArityError,
    PredicateSchemaError,
    StackStepError,
    UnknownAttribute,
)
from .extract import StructuredEventLog, extract_log
from .filters import FilterStack, StepStats, apply_stack, event_count, stack_from_json
from .model import EventTable, attribute_names
from .report import attribute_report, case_id_warnings
from .xes import export_xes

USAGE_EXIT = 2
DATA_EXIT = 1

FORMATS = ("variants", "csv", "xes", "stats")


def cmd_inspect(table: EventTable) -> str:
    """Attribute report text, one line per attribute, candidates first."""
    return "".join(profile.line() + "\n" for profile in attribute_report(table))


def cmd_variants(table: EventTable, case_id: str, classifier: Classifier) -> str:
    """Variants text for the chosen case identifier and classifier."""
    _check_classifier(table, classifier)
    return variants_text(simple_log(extract_log(table, case_id), classifier))


def cmd_filter(
    table: EventTable, case_id: str, stack: FilterStack
) -> tuple[StructuredEventLog, list[StepStats]]:
    """The filtered structured log plus per-step statistics."""
    return apply_stack(extract_log(table, case_id), stack)


def _check_classifier(table: EventTable, classifier: Classifier) -> None:
    known = attribute_names(table)
    for name in classifier.attrs:
        if name not in known:
            raise UnknownAttribute(name)


def _load_stack(path: str) -> FilterStack:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            raw = json.load(handle)
        except json.JSONDecodeError as exc:
            raise PredicateSchemaError(f"stack file is not valid JSON: {exc}") from exc
    return stack_from_json(raw)


def _emit_stats_lines(stats: list[StepStats]) -> None:
    for position, step in enumerate(stats, start=1):
        click.echo(
            f"step {position} {step.kind}: cases {step.cases_in}->{step.cases_out}, "
            f"events {step.events_in}->{step.events_out}",
            err=True,
        )


@click.command(name="caselog")
@click.option("--input", "input_path", type=str, default=None, help="CSV event table to read.")
@click.option("--case-id", "case_id", type=str, default=None, help="Attribute identifying cases.")
@click.option("--classifier", "classifier_spec", type=str, default=None,
              help="Classifier attributes joined by '+', e.g. action+life-cycle.")
@click.option("--stack", "stack_path", type=str, default=None, help="Filter stack JSON file.")
@click.option("--format", "output_format", type=click.Choice(FORMATS), default="variants",
              help="Output format once --case-id is given.")
@click.option("--time-format", "time_format", type=str, default=None,
              help="Primary timestamp format for parsing and CSV output.")
@click.option("--delimiter", type=str, default=",", help="CSV delimiter.")
@click.option("--serve", is_flag=True, default=False, help="Run the HTTP API instead.")
@click.option("--port", type=int, default=8000, help="Port for --serve.")
def main(input_path, case_id, classifier_spec, stack_path, output_format,
         time_format, delimiter, serve, port):
    """Turn a raw CSV event table into traces, variants, and filtered logs."""
    if serve:
        import uvicorn

        from .api import create_app

        uvicorn.run(create_app(), host="127.0.0.1", port=port)
        return

    if input_path is None:
        click.echo("error: --input is required unless --serve is given", err=True)
        sys.exit(USAGE_EXIT)
    if len(delimiter) != 1:
        click.echo("error: --delimiter must be a single character", err=True)
        sys.exit(USAGE_EXIT)

    formats = DEFAULT_TIME_FORMATS if time_format is None else (time_format, *DEFAULT_TIME_FORMATS)
    render_format = time_format if time_format is not None else DEFAULT_TIME_FORMATS[0]
    profile = CsvProfile(delimiter=delimiter, timestamp_formats=formats)

    try:
        with open(input_path, "rb") as handle:
            table = parse_csv(handle.read(), profile)

        if case_id is None:
            click.echo(cmd_inspect(table), nl=False)
            return

        for warning in case_id_warnings(table, case_id):
            click.echo(f"warning: {warning}", err=True)

        classifier = None
        if classifier_spec is not None:
            classifier = Classifier(tuple(classifier_spec.split("+")))
            _check_classifier(table, classifier)
        if output_format == "variants" and classifier is None:
            click.echo("error: --format variants needs --classifier", err=True)
            sys.exit(USAGE_EXIT)

        stack = _load_stack(stack_path) if stack_path is not None else FilterStack()
        log, stats = cmd_filter(table, case_id, stack)
        if log.uncorrelated:
            click.echo(f"events uncorrelated: {log.uncorrelated}", err=True)
        _emit_stats_lines(stats)

        if output_format == "variants":
            click.echo(variants_text(simple_log(log, classifier)), nl=False)
        elif output_format == "csv":
            events = sorted((e for c in log for e in c.trace), key=lambda e: e.index)
            click.echo(
                export_events_csv(events, delimiter=delimiter, time_format=render_format),
                nl=False,
            )
        elif output_format == "xes":
            sys.stdout.buffer.write(export_xes(log))
            sys.stdout.buffer.flush()
        else:
            payload = {
                "cases": len(log),
                "events": event_count(log),
                "uncorrelated": log.uncorrelated,
                "shared_case_attrs": sorted(log.global_case_attrs),
                "steps": [s.as_dict() for s in stats],
            }
            click.echo(json.dumps(payload, indent=2, sort_keys=True))
    except (PredicateSchemaError, PredicateArityError, StackStepError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(USAGE_EXIT)
    except CaselogError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(DATA_EXIT)
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(DATA_EXIT)
