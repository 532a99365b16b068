import { describe, expect, test } from "vitest";

import { chipColor } from "../src/colors.js";
import {
  escapeHtml,
  renderAlphabet,
  renderApp,
  renderReport,
  renderSteps,
  renderSummary,
  renderVariants,
  renderWarnings,
} from "../src/render.js";
import type {
  AlphabetEntry,
  ExplorerResult,
  StepJson,
  StepStats,
  TableReport,
  VariantRow,
} from "../src/types.js";
import { chipColorsIn, chipLabelsIn, countsIn, variantRowsIn } from "./html.js";

const ALPHABET: AlphabetEntry[] = [
  { label: "a", count: 3, color: 0 },
  { label: "b", count: 2, color: 1 },
];

const VARIANTS: VariantRow[] = [
  { count: 2, classes: ["a", "b"] },
  { count: 1, classes: ["a", "a"] },
];

describe("variant table", () => {
  test("one row per variant with the served counts", () => {
    const html = renderVariants(VARIANTS, ALPHABET);
    const rows = variantRowsIn(html);
    expect(rows).toEqual([
      { count: 2, labels: ["a", "b"] },
      { count: 1, labels: ["a", "a"] },
    ]);
  });

  test("repeated classes share one color", () => {
    const html = renderVariants([{ count: 1, classes: ["a", "a"] }], ALPHABET);
    const colors = chipColorsIn(html);
    expect(colors).toHaveLength(2);
    expect(colors[0]).toBe(colors[1]);
    expect(colors[0]).toBe(chipColor(0));
  });

  test("distinct classes get the palette of their color index", () => {
    const html = renderVariants([{ count: 1, classes: ["a", "b"] }], ALPHABET);
    expect(chipColorsIn(html)).toEqual([chipColor(0), chipColor(1)]);
  });

  test("classes missing from the alphabet fall back to gray", () => {
    const html = renderVariants([{ count: 1, classes: ["ghost"] }], ALPHABET);
    expect(chipColorsIn(html)).toEqual([chipColor(-1)]);
  });

  test("empty log renders an empty-state message", () => {
    const html = renderVariants([], ALPHABET);
    expect(html).toContain("no traces to show");
    expect(variantRowsIn(html)).toHaveLength(0);
  });
});

describe("alphabet legend", () => {
  test("lists every class with its count", () => {
    const html = renderAlphabet(ALPHABET);
    expect(chipLabelsIn(html)).toEqual(["a", "b"]);
    expect(countsIn(html)).toEqual([3, 2]);
  });

  test("empty alphabet renders an empty-state message", () => {
    expect(renderAlphabet([])).toContain("no event classes");
  });
});

describe("stack cards", () => {
  const steps: StepJson[] = [
    { kind: "project", pred: { kind: "attr", name: "life-cycle", op: "eq", value: "complete" } },
    { kind: "aggregate", grouping: ["action"], policy: "keep-last" },
  ];
  const stats: StepStats[] = [
    { kind: "project", cases_in: 5, cases_out: 5, events_in: 32, events_out: 30 },
    { kind: "aggregate", cases_in: 5, cases_out: 5, events_in: 30, events_out: 29 },
  ];

  test("cards carry captions, served numbers, and reorder buttons", () => {
    const html = renderSteps(steps, stats);
    expect(html).toContain("project events: life-cycle eq complete");
    expect(html).toContain("aggregate runs by action (keep-last)");
    expect(html).toContain('data-events-in="32"');
    expect(html).toContain('data-events-out="30"');
    expect(html).toContain('data-action="up" data-index="1"');
    expect(html).toContain('data-action="remove" data-index="0"');
  });

  test("unacknowledged stacks render without numbers", () => {
    const html = renderSteps(steps, null);
    expect(html).not.toContain("data-events-in");
    expect(html).toContain("project events");
  });

  test("empty stack renders an empty-state message", () => {
    expect(renderSteps([], null)).toContain("no filter steps");
  });
});

describe("report and summary", () => {
  const report: TableReport = {
    events: 32,
    attributes: [
      {
        name: "order",
        defined: 32,
        distinct: 5,
        type: "int",
        rank: 1,
        repeats_across_entities: false,
      },
      {
        name: "time",
        defined: 32,
        distinct: 31,
        type: "time",
        rank: null,
        repeats_across_entities: false,
      },
    ],
  };

  test("report prints one row per attribute plus the event count", () => {
    const html = renderReport(report);
    expect(html).toContain('data-attribute="order"');
    expect(html).toContain('data-attribute="time"');
    expect(html).toContain("32 events");
    expect(countsIn(html)).toEqual([32, 5, 32, 31, 32]);
  });

  test("summary shows cases, events, and uncorrelated from the result", () => {
    const result = {
      cases: 5,
      events: 32,
      uncorrelated: 0,
    } as ExplorerResult;
    expect(countsIn(renderSummary(result))).toEqual([5, 32, 0]);
  });

  test("warnings render as list items, none renders nothing", () => {
    expect(renderWarnings(["value repeats"]))
      .toContain('<li class="warning">value repeats</li>');
    expect(renderWarnings([])).toBe("");
  });
});

describe("escaping", () => {
  test("markup in labels is escaped", () => {
    const html = renderVariants(
      [{ count: 1, classes: ['<b a="1">'] }],
      [{ label: '<b a="1">', count: 1, color: 0 }],
    );
    expect(html).not.toContain("<b a=");
    expect(html).toContain("&lt;b a=&quot;1&quot;&gt;");
  });

  test("escapeHtml covers the five metacharacters", () => {
    expect(escapeHtml(`<a href="x">&'`)).toBe("&lt;a href=&quot;x&quot;&gt;&amp;&#39;");
  });
});

describe("whole page", () => {
  test("errors surface at the top", () => {
    const html = renderApp({
      report: null,
      steps: [],
      result: null,
      error: "UnknownSession: gone",
    });
    expect(html).toContain('<p class="error">UnknownSession: gone</p>');
  });

  test("without a result only the stack editor section shows", () => {
    const html = renderApp({ report: null, steps: [], result: null, error: null });
    expect(html).toContain('id="stack"');
    expect(html).not.toContain('id="variants"');
  });
});
