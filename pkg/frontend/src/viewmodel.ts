/**
 * View state and its pure transitions.
 *
 * The state never holds numbers of its own: counts, step statistics, and the
 * class alphabet all live inside the last acknowledged server result.  Stack
 * edits produce a candidate step list that is sent to the server; only the
 * acknowledged response is folded back into the state, so the editor always
 * shows the stack the server actually applied.
 */

import type {
  AggregationPolicy,
  ComparisonOp,
  ExplorerResult,
  OperandJson,
  PredicateJson,
  StackJson,
  StepJson,
  TableReport,
  ValueJson,
} from "./types.js";

export interface ViewState {
  sessionId: string | null;
  report: TableReport | null;
  caseId: string | null;
  classifier: string[];
  /** Stack editor model; mirrors the last acknowledged server stack. */
  steps: StepJson[];
  result: ExplorerResult | null;
  error: string | null;
}

export function initialState(): ViewState {
  return {
    sessionId: null,
    report: null,
    caseId: null,
    classifier: [],
    steps: [],
    result: null,
    error: null,
  };
}

export function withUpload(
  state: ViewState,
  sessionId: string,
  report: TableReport,
): ViewState {
  return {
    ...initialState(),
    sessionId,
    report,
  };
}

/** Fold an acknowledged result back in; the editor adopts the applied stack. */
export function withResult(state: ViewState, result: ExplorerResult): ViewState {
  return {
    ...state,
    caseId: result.choices.case_id,
    classifier: [...result.choices.classifier],
    steps: result.stack.steps.map(cloneStep),
    result,
    error: null,
  };
}

/** Stack acknowledged before choices exist; there is no result yet. */
export function withStackAck(state: ViewState, stack: StackJson): ViewState {
  return { ...state, steps: stack.steps.map(cloneStep), error: null };
}

export function withError(state: ViewState, message: string): ViewState {
  return { ...state, error: message };
}

function cloneStep(step: StepJson): StepJson {
  return JSON.parse(JSON.stringify(step)) as StepJson;
}

export function stackOf(steps: StepJson[]): StackJson {
  return { steps: steps.map(cloneStep) };
}

export function addStep(steps: StepJson[], step: StepJson): StepJson[] {
  return [...steps, cloneStep(step)];
}

export function removeStep(steps: StepJson[], index: number): StepJson[] {
  if (index < 0 || index >= steps.length) {
    return steps;
  }
  return steps.filter((_, i) => i !== index);
}

/** Move the step at `from` so it lands at `to`; out-of-range is a no-op. */
export function moveStep(steps: StepJson[], from: number, to: number): StepJson[] {
  if (
    from < 0 ||
    from >= steps.length ||
    to < 0 ||
    to >= steps.length ||
    from === to
  ) {
    return steps;
  }
  const next = [...steps];
  const [moved] = next.splice(from, 1);
  next.splice(to, 0, moved as StepJson);
  return next;
}

const INT_SHAPE = /^-?\d+$/;
const REAL_SHAPE = /^-?(\d+\.\d*|\.\d+)([eE][+-]?\d+)?$/;

/**
 * Map one form field to a wire value the way the CSV reader types cells:
 * integer, then real, otherwise text.  Numbers that do not survive a
 * round trip ("007", "1.50") stay text so they compare like the stored
 * attribute values.
 */
export function scalarFromForm(text: string): ValueJson {
  const trimmed = text.trim();
  if (INT_SHAPE.test(trimmed)) {
    const parsed = Number.parseInt(trimmed, 10);
    if (String(parsed) === trimmed) {
      return parsed;
    }
  } else if (REAL_SHAPE.test(trimmed)) {
    const parsed = Number.parseFloat(trimmed);
    if (String(parsed) === trimmed) {
      return parsed;
    }
  }
  return text;
}

function operandFromForm(op: ComparisonOp, text: string): OperandJson {
  if (op === "in" || op === "not-in") {
    return text.split(",").map((part) => scalarFromForm(part));
  }
  return scalarFromForm(text);
}

/** Selection on a case attribute, e.g. type eq "online". */
export function selectWhereCase(
  name: string,
  op: ComparisonOp,
  value: string,
): StepJson {
  return {
    kind: "select",
    pred: { kind: "case-attr", name, op, value: operandFromForm(op, value) },
  };
}

/** Projection on an event attribute, e.g. life-cycle eq "complete". */
export function projectWhere(
  name: string,
  op: ComparisonOp,
  value: string,
): StepJson {
  return {
    kind: "project",
    pred: { kind: "attr", name, op, value: operandFromForm(op, value) },
  };
}

/** Projection keeping only events that define the attribute. */
export function projectDefined(name: string): StepJson {
  return { kind: "project", pred: { kind: "defined", name } };
}

export function aggregateBy(
  grouping: string[],
  policy: AggregationPolicy = "keep-last",
): StepJson {
  return { kind: "aggregate", grouping: [...grouping], policy };
}

/** One-line card caption for a step; no counts, those come from the server. */
export function describeStep(step: StepJson): string {
  switch (step.kind) {
    case "select":
      return `select cases: ${describePredicate(step.pred)}`;
    case "project":
      return `project events: ${describePredicate(step.pred)}`;
    case "aggregate": {
      const by = step.grouping.join("+");
      const extras =
        step.policy === "merge" && step.timestamp !== undefined
          ? `${step.policy}, ${step.timestamp}`
          : step.policy;
      return `aggregate runs by ${by} (${extras})`;
    }
  }
}

function describeValue(value: OperandJson): string {
  if (Array.isArray(value)) {
    return `(${value.map(describeValue).join(", ")})`;
  }
  if (typeof value === "object" && value !== null) {
    if ("time" in value) {
      return new Date(value.time).toISOString();
    }
    return `{${value.set.map(describeValue).join(", ")}}`;
  }
  return String(value);
}

export function describePredicate(pred: PredicateJson): string {
  switch (pred.kind) {
    case "true":
      return "always";
    case "false":
      return "never";
    case "not":
      return `not (${describePredicate(pred.child)})`;
    case "and":
      return pred.children.map((c) => `(${describePredicate(c)})`).join(" and ") || "always";
    case "or":
      return pred.children.map((c) => `(${describePredicate(c)})`).join(" or ") || "never";
    case "attr":
      return `${pred.name} ${pred.op} ${describeValue(pred.value)}`;
    case "defined":
      return `${pred.name} defined`;
    case "case-attr":
      return `case ${pred.name} ${pred.op} ${describeValue(pred.value)}`;
    case "at":
      return `at ${pred.position}: ${describePredicate(pred.pred)}`;
    case "trace-length":
      return `trace length ${pred.op} ${pred.count}`;
    case "duration":
      return `duration ${pred.op} ${pred.ms} ms`;
    case "variant-freq":
      return `variant under ${pred.classifier.join("+")} occurs ${pred.op} ${pred.count}`;
    case "class-freq":
      return `class under ${pred.classifier.join("+")} occurs ${pred.op} ${pred.count}`;
    case "last-occurrence":
      return `last occurrence of class under ${pred.classifier.join("+")}`;
  }
}
