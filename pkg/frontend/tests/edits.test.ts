import { describe, expect, it } from "vitest";

import { editCounts } from "../src/edits.js";
import type { Rect } from "../src/types.js";

const r = (x0: number, y0: number, x1: number, y1: number): Rect => ({ x0, y0, x1, y1 });

describe("editCounts", () => {
  it("is zero for identical sets", () => {
    const rects = [r(0, 0, 3, 3), r(5, 5, 8, 9)];
    expect(editCounts(rects, rects).total).toBe(0);
  });

  it("counts a moved rectangle as one resize", () => {
    const counts = editCounts([r(0, 0, 3, 3)], [r(0, 1, 3, 4)]);
    expect(counts).toEqual({ resizes: 1, adds: 0, deletes: 0, total: 1 });
  });

  it("counts removals and additions", () => {
    const baseline = [r(0, 0, 3, 3), r(5, 5, 8, 9)];
    const counts = editCounts(baseline, [r(0, 0, 3, 3), r(20, 20, 22, 22)]);
    expect(counts).toEqual({ resizes: 0, adds: 1, deletes: 1, total: 2 });
  });

  it("matches by best overlap, not by order", () => {
    const baseline = [r(0, 0, 3, 3), r(10, 10, 13, 13)];
    const current = [r(10, 10, 13, 13), r(0, 0, 3, 3)];
    expect(editCounts(baseline, current).total).toBe(0);
  });

  it("deleting everything counts each baseline rect", () => {
    const baseline = [r(0, 0, 1, 1), r(3, 3, 4, 4), r(6, 6, 7, 7)];
    expect(editCounts(baseline, [])).toEqual({ resizes: 0, adds: 0, deletes: 3, total: 3 });
  });

  it("an overlap-free change is an add plus a delete", () => {
    const counts = editCounts([r(0, 0, 1, 1)], [r(30, 30, 33, 33)]);
    expect(counts).toEqual({ resizes: 0, adds: 1, deletes: 1, total: 2 });
  });
});
