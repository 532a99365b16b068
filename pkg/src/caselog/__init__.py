"""Turn raw CSV event tables into structured event logs, trace variants,
and filtered views, driven by a chosen case identifier and event classifier.
"""

from .classify import (
    Classifier,
    EventClass,
    SimpleEventLog,
    classify,
    event_classes,
    simple_log,
    simple_trace,
    variants_text,
)
from .csv_io import (
    CsvProfile,
    DEFAULT_TIME_FORMATS,
    ISO_8601,
    SortSpec,
    export_events_csv,
    export_table_csv,
    parse_csv,
    parse_timestamp,
    sort_table,
)
from .errors import (
    CaselogError,
    EmptyEventSet,
    InvalidEventTable,
    MissingActivityAttribute,
    MissingTimeColumn,
    PredicateArityError,
    PredicateSchemaError,
    RowWithOnlyTime,
    StackStepError,
    TimeAsCaseId,
    UnknownAttribute,
    UnparseableTimestamp,
)
from .extract import (
    Case,
    PartialOrderTrace,
    StructuredEventLog,
    build_trace,
    cases,
    check_log_invariants,
    constant_attrs,
    correlate,
    extract_log,
    linearizations,
    make_case,
    partial_order_trace,
    shared_attr_names,
)
from .filters import (
    Aggregate,
    AggregationSpec,
    FilterStack,
    Project,
    Select,
    StepStats,
    aggregate,
    apply_stack,
    event_count,
    project,
    select,
    stack_from_json,
    stack_to_json,
)
from .model import (
    AUX_ATTRS,
    AttributeValue,
    Event,
    EventTable,
    RAW_TIME_ATTR,
    SOURCE_INDEX_ATTR,
    TIME_ATTR,
    Tag,
    UNDEFINED,
    attribute_names,
    attribute_order,
    get_attr,
    integer,
    real,
    render_time,
    render_value,
    text,
    time_ms,
    validate_event,
    value_set,
)
from .predicates import (
    And,
    At,
    Attr,
    CaseAttr,
    ClassFreq,
    Defined,
    Duration,
    FalsePred,
    LastOccurrence,
    Level,
    Not,
    Or,
    Predicate,
    StepContext,
    TraceLength,
    TruePred,
    VariantFreq,
    compare,
    predicate_from_json,
    predicate_to_json,
    value_from_json,
    value_to_json,
)
from .report import AttributeProfile, attribute_report, case_id_warnings
from .xes import export_xes

__version__ = "0.1.0"
