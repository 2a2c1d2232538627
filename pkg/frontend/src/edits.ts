/** Edit counting: how many corrections the current rectangles represent
 * relative to the last server-acknowledged set. Matches pair up greedily
 * by best box IoU; a changed matched rectangle is one resize, an
 * unmatched current rectangle is an add, an unmatched baseline one a
 * delete. */

import { boxIou, rectsEqual } from "./geometry.js";
import type { EditCounts, Rect } from "./types.js";

export function editCounts(baseline: Rect[], current: Rect[]): EditCounts {
  const pairs: { iou: number; b: number; c: number }[] = [];
  baseline.forEach((rb, b) => {
    current.forEach((rc, c) => {
      pairs.push({ iou: boxIou(rb, rc), b, c });
    });
  });
  pairs.sort((p, q) => q.iou - p.iou);

  const usedB = new Set<number>();
  const usedC = new Set<number>();
  let resizes = 0;
  for (const { iou, b, c } of pairs) {
    if (usedB.has(b) || usedC.has(c)) continue;
    if (iou <= 0 && !rectsEqual(baseline[b]!, current[c]!)) continue;
    usedB.add(b);
    usedC.add(c);
    if (!rectsEqual(baseline[b]!, current[c]!)) resizes += 1;
  }
  const adds = current.length - usedC.size;
  const deletes = baseline.length - usedB.size;
  return { resizes, adds, deletes, total: resizes + adds + deletes };
}
