/** Canvas grid renderer with row virtualization and region overlays.
 *
 * Cells are painted from the type-color map served by the API, so the
 * view matches the server's PNG rendering pixel for pixel (scaled).
 * Only the rows inside the viewport are drawn; hovering reveals the
 * literal cell value.
 */

import { HANDLES, type Handle, rectContains } from "./geometry.js";
import type { GridData, Rect, RegionState } from "./types.js";

export interface Viewport {
  scrollX: number; // pixels
  scrollY: number;
  width: number;
  height: number;
  cellSize: number;
}

export interface VisibleRange {
  first: number;
  last: number; // inclusive
}

/** Rows (or columns) intersecting the viewport. */
export function visibleRange(scroll: number, span: number, cellSize: number, total: number): VisibleRange {
  if (total <= 0) return { first: 0, last: -1 };
  const first = Math.max(0, Math.floor(scroll / cellSize));
  const last = Math.min(total - 1, Math.ceil((scroll + span) / cellSize) - 1);
  return { first, last };
}

export function cellAtPoint(px: number, py: number, viewport: Viewport, grid: GridData): { x: number; y: number } | null {
  const x = Math.floor((px + viewport.scrollX) / viewport.cellSize);
  const y = Math.floor((py + viewport.scrollY) / viewport.cellSize);
  if (x < 0 || y < 0 || x >= grid.cols || y >= grid.rows) return null;
  return { x, y };
}

export interface HandleHit {
  kind: "handle";
  handle: Handle;
}

export interface InsideHit {
  kind: "inside";
}

export type RegionHit = HandleHit | InsideHit | null;

/** Pixel-space coordinates of a region's eight handles. */
export function handlePositions(rect: Rect, viewport: Viewport): Record<Handle, { px: number; py: number }> {
  const size = viewport.cellSize;
  const left = rect.x0 * size - viewport.scrollX;
  const top = rect.y0 * size - viewport.scrollY;
  const right = (rect.x1 + 1) * size - viewport.scrollX;
  const bottom = (rect.y1 + 1) * size - viewport.scrollY;
  const midX = (left + right) / 2;
  const midY = (top + bottom) / 2;
  return {
    nw: { px: left, py: top },
    n: { px: midX, py: top },
    ne: { px: right, py: top },
    e: { px: right, py: midY },
    se: { px: right, py: bottom },
    s: { px: midX, py: bottom },
    sw: { px: left, py: bottom },
    w: { px: left, py: midY },
  };
}

/** What part of a region (if any) sits under a pixel. */
export function hitTestRegion(px: number, py: number, rect: Rect, viewport: Viewport, tolerance = 5): RegionHit {
  const handles = handlePositions(rect, viewport);
  for (const handle of HANDLES) {
    const { px: hx, py: hy } = handles[handle];
    if (Math.abs(px - hx) <= tolerance && Math.abs(py - hy) <= tolerance) {
      return { kind: "handle", handle };
    }
  }
  const cell = {
    x: Math.floor((px + viewport.scrollX) / viewport.cellSize),
    y: Math.floor((py + viewport.scrollY) / viewport.cellSize),
  };
  if (rectContains(rect, cell.x, cell.y)) return { kind: "inside" };
  return null;
}

function cssColor([r, g, b]: [number, number, number]): string {
  return `rgb(${r},${g},${b})`;
}

export class GridView {
  private grid: GridData | null = null;
  private regions: RegionState[] = [];
  private selected: number | null = null;

  constructor(
    private readonly canvas: HTMLCanvasElement,
    private readonly viewport: Viewport,
  ) {}

  setGrid(grid: GridData | null): void {
    this.grid = grid;
  }

  setRegions(regions: RegionState[], selected: number | null): void {
    this.regions = regions;
    this.selected = selected;
  }

  contentSize(): { width: number; height: number } {
    if (!this.grid) return { width: 0, height: 0 };
    return {
      width: this.grid.cols * this.viewport.cellSize,
      height: this.grid.rows * this.viewport.cellSize,
    };
  }

  render(): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    const { width, height, cellSize, scrollX, scrollY } = this.viewport;
    ctx.clearRect(0, 0, width, height);
    const grid = this.grid;
    if (!grid) return;

    const rows = visibleRange(scrollY, height, cellSize, grid.rows);
    const cols = visibleRange(scrollX, width, cellSize, grid.cols);
    for (let y = rows.first; y <= rows.last; y++) {
      const row = grid.cells[y];
      if (!row) continue;
      for (let x = cols.first; x <= cols.last; x++) {
        const type = row[x] ?? "empty";
        const color = grid.colors[type];
        ctx.fillStyle = color ? cssColor(color) : "#ffffff";
        ctx.fillRect(x * cellSize - scrollX, y * cellSize - scrollY, cellSize, cellSize);
      }
    }

    // light cell grid on top of the fills
    ctx.strokeStyle = "rgba(0,0,0,0.08)";
    ctx.lineWidth = 1;
    ctx.beginPath();
    for (let y = rows.first; y <= rows.last + 1; y++) {
      const py = y * cellSize - scrollY + 0.5;
      ctx.moveTo(0, py);
      ctx.lineTo(width, py);
    }
    for (let x = cols.first; x <= cols.last + 1; x++) {
      const px = x * cellSize - scrollX + 0.5;
      ctx.moveTo(px, 0);
      ctx.lineTo(px, height);
    }
    ctx.stroke();

    this.regions.forEach((region, index) => {
      this.drawOverlay(ctx, region, index === this.selected);
    });
  }

  private drawOverlay(ctx: CanvasRenderingContext2D, region: RegionState, isSelected: boolean): void {
    const { cellSize, scrollX, scrollY } = this.viewport;
    const r = region.boundary;
    const left = r.x0 * cellSize - scrollX;
    const top = r.y0 * cellSize - scrollY;
    const w = (r.x1 - r.x0 + 1) * cellSize;
    const h = (r.y1 - r.y0 + 1) * cellSize;

    ctx.fillStyle = isSelected ? "rgba(30,90,200,0.14)" : "rgba(30,90,200,0.06)";
    ctx.fillRect(left, top, w, h);
    ctx.strokeStyle = isSelected ? "#1e5ac8" : "#4a77c4";
    ctx.lineWidth = isSelected ? 2 : 1.25;
    ctx.strokeRect(left + 0.5, top + 0.5, w - 1, h - 1);

    ctx.fillStyle = "#1e5ac8";
    ctx.font = "11px sans-serif";
    ctx.fillText(`r${region.id}`, left + 3, top + 12);

    if (isSelected) {
      const handles = handlePositions(r, this.viewport);
      ctx.fillStyle = "#ffffff";
      ctx.strokeStyle = "#1e5ac8";
      for (const handle of HANDLES) {
        const { px, py } = handles[handle];
        ctx.beginPath();
        ctx.rect(px - 3.5, py - 3.5, 7, 7);
        ctx.fill();
        ctx.stroke();
      }
    }
  }
}
