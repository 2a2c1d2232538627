/** Rectangle math in cell coordinates (inclusive bounds). */

import type { Rect } from "./types.js";

export type Handle = "nw" | "n" | "ne" | "e" | "se" | "s" | "sw" | "w";

export const HANDLES: Handle[] = ["nw", "n", "ne", "e", "se", "s", "sw", "w"];

export function normalizeRect(r: Rect): Rect {
  return {
    x0: Math.min(r.x0, r.x1),
    y0: Math.min(r.y0, r.y1),
    x1: Math.max(r.x0, r.x1),
    y1: Math.max(r.y0, r.y1),
  };
}

export function isValidRect(r: Rect): boolean {
  return (
    Number.isInteger(r.x0) &&
    Number.isInteger(r.y0) &&
    Number.isInteger(r.x1) &&
    Number.isInteger(r.y1) &&
    r.x0 >= 0 &&
    r.y0 >= 0 &&
    r.x0 <= r.x1 &&
    r.y0 <= r.y1
  );
}

/** Clamp a rectangle into a rows x cols grid, preserving validity. */
export function clampRect(r: Rect, rows: number, cols: number): Rect {
  const clampX = (v: number) => Math.max(0, Math.min(cols - 1, Math.round(v)));
  const clampY = (v: number) => Math.max(0, Math.min(rows - 1, Math.round(v)));
  const n = normalizeRect(r);
  return {
    x0: clampX(n.x0),
    y0: clampY(n.y0),
    x1: clampX(n.x1),
    y1: clampY(n.y1),
  };
}

export function rectsEqual(a: Rect, b: Rect): boolean {
  return a.x0 === b.x0 && a.y0 === b.y0 && a.x1 === b.x1 && a.y1 === b.y1;
}

export function translateRect(r: Rect, dx: number, dy: number): Rect {
  return { x0: r.x0 + dx, y0: r.y0 + dy, x1: r.x1 + dx, y1: r.y1 + dy };
}

/** Translate, but keep the whole rectangle inside the grid (size preserved). */
export function moveWithinGrid(r: Rect, dx: number, dy: number, rows: number, cols: number): Rect {
  const width = r.x1 - r.x0;
  const height = r.y1 - r.y0;
  const x0 = Math.max(0, Math.min(cols - 1 - width, r.x0 + dx));
  const y0 = Math.max(0, Math.min(rows - 1 - height, r.y0 + dy));
  return { x0, y0, x1: x0 + width, y1: y0 + height };
}

/** Drag one of the eight handles to a target cell. */
export function applyHandleDrag(r: Rect, handle: Handle, cellX: number, cellY: number): Rect {
  const next = { ...r };
  if (handle.includes("w")) next.x0 = cellX;
  if (handle.includes("e")) next.x1 = cellX;
  if (handle.includes("n")) next.y0 = cellY;
  if (handle.includes("s")) next.y1 = cellY;
  return normalizeRect(next);
}

export function rectContains(r: Rect, x: number, y: number): boolean {
  return x >= r.x0 && x <= r.x1 && y >= r.y0 && y <= r.y1;
}

export function rectArea(r: Rect): number {
  return (r.x1 - r.x0 + 1) * (r.y1 - r.y0 + 1);
}

/** Intersection-over-union of two boxes on their cell areas. */
export function boxIou(a: Rect, b: Rect): number {
  const ix = Math.min(a.x1, b.x1) - Math.max(a.x0, b.x0) + 1;
  const iy = Math.min(a.y1, b.y1) - Math.max(a.y0, b.y0) + 1;
  if (ix <= 0 || iy <= 0) return 0;
  const inter = ix * iy;
  return inter / (rectArea(a) + rectArea(b) - inter);
}
