/**
 * Browser wiring.
 *
 * Reads form input, talks to the API through ExplorerClient, folds every
 * acknowledged response into the view state, and re-renders.  Mutations are
 * queued so at most one is in flight per session; nothing is rendered
 * optimistically.  The session id lives in the URL hash, so a reload
 * reconstructs the whole view from one GET.
 */

import { ApiError, ExplorerClient } from "./api.js";
import { renderApp } from "./render.js";
import {
  addStep,
  aggregateBy,
  initialState,
  moveStep,
  projectWhere,
  removeStep,
  selectWhereCase,
  stackOf,
  withError,
  withResult,
  withStackAck,
  withUpload,
  type ViewState,
} from "./viewmodel.js";
import type { ComparisonOp, ExplorerResult, StackJson, StepJson } from "./types.js";

function apiBase(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  return fromQuery ?? "http://127.0.0.1:8000";
}

const client = new ExplorerClient(apiBase());
let state: ViewState = initialState();
let queue: Promise<void> = Promise.resolve();

function element<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (found === null) {
    throw new Error(`missing element #${id}`);
  }
  return found as T;
}

function redraw(): void {
  element<HTMLDivElement>("app").innerHTML = renderApp(state);
}

function fail(error: unknown): void {
  const message =
    error instanceof ApiError
      ? error.step === undefined
        ? `${error.code}: ${error.message}`
        : `${error.code} at step ${error.step}: ${error.message}`
      : String(error);
  state = withError(state, message);
  redraw();
}

/** Serialize mutations; each runs only after the previous one settled. */
function enqueue(mutation: () => Promise<void>): void {
  queue = queue.then(mutation).catch((error) => {
    fail(error);
  });
}

function isResult(body: ExplorerResult | { stack: StackJson }): body is ExplorerResult {
  return "variants" in body;
}

async function pushStack(steps: StepJson[]): Promise<void> {
  if (state.sessionId === null) {
    throw new Error("upload a table first");
  }
  const body = await client.setStack(state.sessionId, stackOf(steps));
  state = isResult(body) ? withResult(state, body) : withStackAck(state, body.stack);
  redraw();
}

function uploadFromForm(): void {
  const csv = element<HTMLTextAreaElement>("csv").value;
  const delimiter = element<HTMLInputElement>("delimiter").value || ",";
  const timeColumn = element<HTMLInputElement>("time-column").value || "time";
  enqueue(async () => {
    const response = await client.uploadTable(csv, { delimiter, timeColumn });
    state = withUpload(state, response.session_id, response.report);
    window.location.hash = response.session_id;
    redraw();
  });
}

function chooseFromForm(): void {
  const caseId = element<HTMLInputElement>("case-id").value.trim();
  const classifier = element<HTMLInputElement>("classifier")
    .value.split("+")
    .map((name) => name.trim())
    .filter((name) => name !== "");
  enqueue(async () => {
    if (state.sessionId === null) {
      throw new Error("upload a table first");
    }
    const result = await client.setChoices(state.sessionId, caseId, classifier);
    state = withResult(state, result);
    redraw();
  });
}

function stepFromForm(): StepJson {
  const kind = element<HTMLSelectElement>("step-kind").value;
  const name = element<HTMLInputElement>("step-attr").value.trim();
  const op = element<HTMLSelectElement>("step-op").value as ComparisonOp;
  const value = element<HTMLInputElement>("step-value").value;
  if (kind === "select") {
    return selectWhereCase(name, op, value);
  }
  if (kind === "project") {
    return projectWhere(name, op, value);
  }
  return aggregateBy(name.split("+").map((part) => part.trim()));
}

function wireStackButtons(): void {
  element<HTMLDivElement>("app").addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    const action = target.dataset["action"];
    if (action === undefined) {
      return;
    }
    const index = Number.parseInt(target.dataset["index"] ?? "", 10);
    const steps =
      action === "remove"
        ? removeStep(state.steps, index)
        : action === "up"
          ? moveStep(state.steps, index, index - 1)
          : moveStep(state.steps, index, index + 1);
    if (steps === state.steps) {
      return;
    }
    enqueue(() => pushStack(steps));
  });
}

function restoreFromHash(): void {
  const sessionId = window.location.hash.replace(/^#/, "");
  if (sessionId === "") {
    return;
  }
  enqueue(async () => {
    const session = await client.session(sessionId);
    state = withUpload(state, session.session_id, session.report);
    state = withStackAck(state, session.stack);
    if (session.choices !== null) {
      state = withResult(state, await client.result(sessionId));
    }
    redraw();
  });
}

export function start(): void {
  element<HTMLButtonElement>("upload").addEventListener("click", uploadFromForm);
  element<HTMLButtonElement>("choose").addEventListener("click", chooseFromForm);
  element<HTMLButtonElement>("add-step").addEventListener("click", () => {
    enqueue(() => pushStack(addStep(state.steps, stepFromForm())));
  });
  wireStackButtons();
  restoreFromHash();
  redraw();
}

start();
