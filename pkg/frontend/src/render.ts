/**
 * Pure HTML renderers.
 *
 * Every function maps server data to a markup string and nothing else: no
 * DOM access, no arithmetic on counts beyond printing them.  Numbers carry
 * data attributes so tests can read back exactly what is displayed and
 * compare it against the API response they rendered from.
 */

import { chipColor } from "./colors.js";
import { describeStep } from "./viewmodel.js";
import type {
  AlphabetEntry,
  ExplorerResult,
  StepJson,
  StepStats,
  TableReport,
  VariantRow,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

/** Map class labels to the server-assigned color index. */
export function colorIndexByLabel(alphabet: AlphabetEntry[]): Map<string, number> {
  const byLabel = new Map<string, number>();
  for (const entry of alphabet) {
    byLabel.set(entry.label, entry.color);
  }
  return byLabel;
}

function chip(label: string, colorIndex: number | undefined): string {
  const color = colorIndex === undefined ? chipColor(-1) : chipColor(colorIndex);
  return (
    `<span class="chip" data-label="${escapeHtml(label)}" ` +
    `style="background:${color}">${escapeHtml(label)}</span>`
  );
}

export function renderReport(report: TableReport): string {
  const rows = report.attributes
    .map((attr) => {
      const rank = attr.rank === null ? "" : String(attr.rank);
      const note = attr.repeats_across_entities ? "repeats across entities" : "";
      return (
        `<tr data-attribute="${escapeHtml(attr.name)}">` +
        `<td>${escapeHtml(attr.name)}</td>` +
        `<td data-count="${attr.defined}">${attr.defined}</td>` +
        `<td data-count="${attr.distinct}">${attr.distinct}</td>` +
        `<td>${escapeHtml(attr.type)}</td>` +
        `<td>${rank}</td>` +
        `<td>${note}</td>` +
        `</tr>`
      );
    })
    .join("");
  return (
    `<table class="report"><thead><tr>` +
    `<th>attribute</th><th>defined</th><th>distinct</th>` +
    `<th>type</th><th>id rank</th><th></th>` +
    `</tr></thead><tbody>${rows}</tbody></table>` +
    `<p data-count="${report.events}">${report.events} events</p>`
  );
}

export function renderAlphabet(alphabet: AlphabetEntry[]): string {
  if (alphabet.length === 0) {
    return `<p class="empty">no event classes</p>`;
  }
  const items = alphabet
    .map(
      (entry) =>
        `<li>${chip(entry.label, entry.color)}` +
        `<span data-count="${entry.count}">${entry.count}</span></li>`,
    )
    .join("");
  return `<ul class="alphabet">${items}</ul>`;
}

export function renderVariants(
  variants: VariantRow[],
  alphabet: AlphabetEntry[],
): string {
  if (variants.length === 0) {
    return `<p class="empty">no traces to show</p>`;
  }
  const colors = colorIndexByLabel(alphabet);
  const rows = variants
    .map((row) => {
      const chips = row.classes.map((label) => chip(label, colors.get(label)));
      return (
        `<tr class="variant">` +
        `<td data-count="${row.count}">${row.count}</td>` +
        `<td>${chips.join("")}</td>` +
        `</tr>`
      );
    })
    .join("");
  return (
    `<table class="variants"><thead><tr><th>cases</th><th>trace</th></tr></thead>` +
    `<tbody>${rows}</tbody></table>`
  );
}

/**
 * Stack editor cards.  Statistics are shown only for steps the server has
 * acknowledged; a freshly edited stack renders without numbers until the
 * round trip completes.
 */
export function renderSteps(steps: StepJson[], stats: StepStats[] | null): string {
  if (steps.length === 0) {
    return `<p class="empty">no filter steps</p>`;
  }
  const cards = steps
    .map((step, index) => {
      const stat = stats?.[index];
      const numbers =
        stat === undefined
          ? ""
          : `<span class="stat">cases <b data-cases-in="${stat.cases_in}">${stat.cases_in}</b>` +
            ` to <b data-cases-out="${stat.cases_out}">${stat.cases_out}</b>,` +
            ` events <b data-events-in="${stat.events_in}">${stat.events_in}</b>` +
            ` to <b data-events-out="${stat.events_out}">${stat.events_out}</b></span>`;
      return (
        `<li class="step" data-index="${index}" data-kind="${step.kind}">` +
        `<span class="caption">${escapeHtml(describeStep(step))}</span>` +
        numbers +
        `<button data-action="up" data-index="${index}">up</button>` +
        `<button data-action="down" data-index="${index}">down</button>` +
        `<button data-action="remove" data-index="${index}">remove</button>` +
        `</li>`
      );
    })
    .join("");
  return `<ol class="steps">${cards}</ol>`;
}

export function renderSummary(result: ExplorerResult): string {
  return (
    `<p class="summary">` +
    `<span data-count="${result.cases}">${result.cases} cases</span>, ` +
    `<span data-count="${result.events}">${result.events} events</span>, ` +
    `<span data-count="${result.uncorrelated}">${result.uncorrelated} uncorrelated</span>` +
    `</p>`
  );
}

export function renderWarnings(warnings: string[]): string {
  if (warnings.length === 0) {
    return "";
  }
  const items = warnings
    .map((warning) => `<li class="warning">${escapeHtml(warning)}</li>`)
    .join("");
  return `<ul class="warnings">${items}</ul>`;
}

export interface AppView {
  report: TableReport | null;
  steps: StepJson[];
  result: ExplorerResult | null;
  error: string | null;
}

export function renderApp(view: AppView): string {
  const parts: string[] = [];
  if (view.error !== null) {
    parts.push(`<p class="error">${escapeHtml(view.error)}</p>`);
  }
  if (view.report !== null) {
    parts.push(`<section id="report">${renderReport(view.report)}</section>`);
  }
  if (view.result !== null) {
    parts.push(`<section id="summary">${renderSummary(view.result)}</section>`);
    parts.push(renderWarnings(view.result.warnings));
    parts.push(
      `<section id="stack">${renderSteps(view.steps, view.result.steps)}</section>`,
    );
    parts.push(
      `<section id="alphabet">${renderAlphabet(view.result.alphabet)}</section>`,
    );
    parts.push(
      `<section id="variants">` +
        renderVariants(view.result.variants, view.result.alphabet) +
        `</section>`,
    );
  } else {
    parts.push(`<section id="stack">${renderSteps(view.steps, null)}</section>`);
  }
  return parts.join("\n");
}
