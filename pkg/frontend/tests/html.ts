/** Helpers to read displayed values back out of rendered markup. */

export function countsIn(html: string): number[] {
  return [...html.matchAll(/data-count="(\d+)"/g)].map((m) => Number(m[1]));
}

export function chipLabelsIn(html: string): string[] {
  return [...html.matchAll(/data-label="([^"]*)"/g)].map((m) => m[1] as string);
}

export function chipColorsIn(html: string): string[] {
  return [...html.matchAll(/class="chip"[^>]*background:(#[0-9a-f]{6})/g)].map(
    (m) => m[1] as string,
  );
}

export interface DisplayedStepStats {
  casesIn: number;
  casesOut: number;
  eventsIn: number;
  eventsOut: number;
}

export function stepStatsIn(html: string): DisplayedStepStats[] {
  const pattern =
    /data-cases-in="(\d+)"[^]*?data-cases-out="(\d+)"[^]*?data-events-in="(\d+)"[^]*?data-events-out="(\d+)"/g;
  return [...html.matchAll(pattern)].map((m) => ({
    casesIn: Number(m[1]),
    casesOut: Number(m[2]),
    eventsIn: Number(m[3]),
    eventsOut: Number(m[4]),
  }));
}

export function variantRowsIn(html: string): { count: number; labels: string[] }[] {
  return [...html.matchAll(/<tr class="variant">[^]*?<\/tr>/g)].map((row) => {
    const source = row[0];
    const count = Number(/data-count="(\d+)"/.exec(source)?.[1]);
    return { count, labels: chipLabelsIn(source) };
  });
}
