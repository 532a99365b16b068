/**
 * Wire types for the /v1 JSON API.
 *
 * These mirror the server's response and request bodies field by field; the
 * UI renders these values verbatim and never derives counts of its own.
 */

export type ComparisonOp =
  | "eq"
  | "ne"
  | "lt"
  | "le"
  | "gt"
  | "ge"
  | "in"
  | "not-in";

/** A tagged scalar on the wire: text, number, timestamp (UTC ms), or set. */
export type ValueJson =
  | string
  | number
  | { time: number }
  | { set: ValueJson[] };

/** Comparison operand: a scalar, or a list for "in" / "not-in". */
export type OperandJson = ValueJson | ValueJson[];

export type PredicateJson =
  | { kind: "true" }
  | { kind: "false" }
  | { kind: "not"; child: PredicateJson }
  | { kind: "and"; children: PredicateJson[] }
  | { kind: "or"; children: PredicateJson[] }
  | { kind: "attr"; name: string; op: ComparisonOp; value: OperandJson }
  | { kind: "defined"; name: string }
  | { kind: "case-attr"; name: string; op: ComparisonOp; value: OperandJson }
  | { kind: "at"; position: number | "first" | "last"; pred: PredicateJson }
  | { kind: "trace-length"; op: ComparisonOp; count: number }
  | { kind: "duration"; op: ComparisonOp; ms: number }
  | { kind: "variant-freq"; classifier: string[]; op: ComparisonOp; count: number }
  | { kind: "class-freq"; classifier: string[]; op: ComparisonOp; count: number }
  | { kind: "last-occurrence"; classifier: string[] };

export type AggregationPolicy = "keep-last" | "keep-first" | "merge";

export type MergeTimestamp = "first" | "last" | "midpoint";

export type StepJson =
  | { kind: "select"; pred: PredicateJson }
  | { kind: "project"; pred: PredicateJson }
  | {
      kind: "aggregate";
      grouping: string[];
      policy: AggregationPolicy;
      timestamp?: MergeTimestamp;
      collect?: string[];
    };

export interface StackJson {
  steps: StepJson[];
}

/** One attribute profiled by the upload report. */
export interface AttributeProfile {
  name: string;
  defined: number;
  distinct: number;
  type: string;
  /** Case identifier candidate rank; null when unsuitable (e.g. the time column). */
  rank: number | null;
  repeats_across_entities: boolean;
}

export interface TableReport {
  events: number;
  attributes: AttributeProfile[];
}

export interface UploadResponse {
  session_id: string;
  report: TableReport;
}

export interface Choices {
  case_id: string;
  classifier: string[];
}

/** Per-step before/after sizes, in stack order. */
export interface StepStats {
  kind: "select" | "project" | "aggregate";
  cases_in: number;
  cases_out: number;
  events_in: number;
  events_out: number;
}

/** One event class with its frequency and frequency-ranked color index. */
export interface AlphabetEntry {
  label: string;
  count: number;
  color: number;
}

export interface VariantRow {
  count: number;
  classes: string[];
}

/** Full recompute result for the current (choices, stack) of a session. */
export interface ExplorerResult {
  choices: Choices;
  stack: StackJson;
  steps: StepStats[];
  cases: number;
  events: number;
  uncorrelated: number;
  alphabet: AlphabetEntry[];
  variants: VariantRow[];
  warnings: string[];
}

export interface SessionState {
  session_id: string;
  report: TableReport;
  choices: Choices | null;
  stack: StackJson;
}
