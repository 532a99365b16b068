/**
 * Chip colors for event classes.
 *
 * The server assigns each class a color index by frequency rank; the palette
 * here only maps indices to hues and repeats once it runs out.
 */

export const CHIP_PALETTE = [
  "#1b9e77",
  "#d95f02",
  "#7570b3",
  "#e7298a",
  "#66a61e",
  "#e6ab02",
  "#a6761d",
  "#386cb0",
  "#f0027f",
  "#666666",
] as const;

const FALLBACK = "#666666";

export function chipColor(index: number): string {
  if (!Number.isInteger(index) || index < 0) {
    return FALLBACK;
  }
  return CHIP_PALETTE[index % CHIP_PALETTE.length] ?? FALLBACK;
}
