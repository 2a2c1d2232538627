/** Controller for one file's editing session.
 *
 * Region edits are buffered locally (and clamped to the grid, so no
 * invalid rectangle ever reaches the server) until an explicit save.
 * Saves carry the file's version token; a stale save surfaces the
 * server state as a conflict for the user to reconcile instead of
 * silently overwriting.
 */

import { ApiClient, ApiError } from "./api.js";
import { editCounts } from "./edits.js";
import {
  applyHandleDrag,
  clampRect,
  type Handle,
  isValidRect,
  moveWithinGrid,
  rectsEqual,
} from "./geometry.js";
import type { DetectParams, EditCounts, GridData, Rect, RegionState, SplitOutput } from "./types.js";

export interface Conflict {
  serverVersion: number;
  serverRegions: RegionState[];
}

export type SaveResult = "saved" | "noop" | "conflict";

export class Session {
  grid: GridData | null = null;
  fileId: string | null = null;
  version = 0;
  /** working copy, including unsaved edits */
  regions: RegionState[] = [];
  /** last server-acknowledged rectangles */
  baseline: Rect[] = [];
  selected: number | null = null;
  conflict: Conflict | null = null;
  lastSplit: SplitOutput[] = [];

  private undoStack: RegionState[][] = [];

  constructor(private readonly api: ApiClient) {}

  get dirty(): boolean {
    const current = this.regions.map((r) => r.boundary);
    return (
      current.length !== this.baseline.length ||
      current.some((r, i) => !rectsEqual(r, this.baseline[i]!))
    );
  }

  counts(): EditCounts {
    return editCounts(
      this.baseline,
      this.regions.map((r) => r.boundary),
    );
  }

  /** Upload a file and run detection. State only changes if every call
   * succeeds; a failure leaves the previous session intact. */
  async loadAndDetect(name: string, content: string, params: DetectParams = {}): Promise<void> {
    const uploaded = await this.api.upload(name, content);
    const grid = await this.api.grid(uploaded.id);
    const detected = await this.api.detect(uploaded.id, params);
    this.fileId = uploaded.id;
    this.grid = grid;
    this.adopt(detected.regions, detected.version);
    this.lastSplit = [];
  }

  /** Re-run detection on the current file, replacing buffered edits. */
  async redetect(params: DetectParams = {}): Promise<void> {
    const fileId = this.requireFile();
    this.pushUndo();
    const detected = await this.api.detect(fileId, params);
    this.adopt(detected.regions, detected.version);
  }

  private adopt(regions: RegionState[], version: number): void {
    this.regions = regions.map((r) => ({ id: r.id, boundary: { ...r.boundary } }));
    this.baseline = regions.map((r) => ({ ...r.boundary }));
    this.version = version;
    this.conflict = null;
    this.selected = this.regions.length ? 0 : null;
  }

  private requireFile(): string {
    if (!this.fileId || !this.grid) throw new Error("no file loaded");
    return this.fileId;
  }

  private pushUndo(): void {
    this.undoStack.push(this.regions.map((r) => ({ id: r.id, boundary: { ...r.boundary } })));
    if (this.undoStack.length > 100) this.undoStack.shift();
  }

  undo(): boolean {
    const previous = this.undoStack.pop();
    if (!previous) return false;
    this.regions = previous;
    if (this.selected !== null && this.selected >= this.regions.length) {
      this.selected = this.regions.length ? this.regions.length - 1 : null;
    }
    return true;
  }

  // -- buffered edits (all clamped to the grid) -----------------------

  addRegion(rect: Rect): number {
    const grid = this.mustGrid();
    this.pushUndo();
    const boundary = clampRect(rect, grid.rows, grid.cols);
    const id = this.regions.reduce((top, r) => Math.max(top, r.id), -1) + 1;
    this.regions.push({ id, boundary });
    this.selected = this.regions.length - 1;
    return this.selected;
  }

  deleteRegion(index: number): void {
    if (index < 0 || index >= this.regions.length) return;
    this.pushUndo();
    this.regions.splice(index, 1);
    if (this.selected !== null) {
      if (this.regions.length === 0) this.selected = null;
      else if (this.selected >= this.regions.length) this.selected = this.regions.length - 1;
    }
  }

  moveRegion(index: number, dx: number, dy: number): void {
    const grid = this.mustGrid();
    const region = this.regions[index];
    if (!region) return;
    this.pushUndo();
    region.boundary = moveWithinGrid(region.boundary, dx, dy, grid.rows, grid.cols);
  }

  resizeRegion(index: number, handle: Handle, cellX: number, cellY: number): void {
    const grid = this.mustGrid();
    const region = this.regions[index];
    if (!region) return;
    this.pushUndo();
    const dragged = applyHandleDrag(region.boundary, handle, cellX, cellY);
    region.boundary = clampRect(dragged, grid.rows, grid.cols);
  }

  private mustGrid(): GridData {
    if (!this.grid) throw new Error("no file loaded");
    return this.grid;
  }

  // -- persistence -----------------------------------------------------

  /** PUT the working rectangles. Never sends an invalid rectangle. */
  async save(): Promise<SaveResult> {
    const fileId = this.requireFile();
    if (!this.dirty) return "noop";
    const rects = this.regions.map((r) => r.boundary);
    if (rects.some((r) => !isValidRect(r))) {
      throw new Error("internal error: invalid rectangle in working set");
    }
    try {
      const saved = await this.api.putRegions(fileId, rects, this.version);
      this.adopt(saved.regions, saved.version);
      return "saved";
    } catch (err) {
      if (err instanceof ApiError && err.code === 409) {
        const server = await this.api.getRegions(fileId);
        this.conflict = { serverVersion: server.version, serverRegions: server.regions };
        return "conflict";
      }
      throw err;
    }
  }

  /** Resolve a pending 409: adopt the server state, or re-apply the
   * local rectangles on top of the server's version token. */
  async resolveConflict(strategy: "take-server" | "keep-mine"): Promise<void> {
    const fileId = this.requireFile();
    const conflict = this.conflict;
    if (!conflict) return;
    if (strategy === "take-server") {
      this.adopt(conflict.serverRegions, conflict.serverVersion);
      return;
    }
    const rects = this.regions.map((r) => r.boundary);
    const saved = await this.api.putRegions(fileId, rects, conflict.serverVersion);
    this.adopt(saved.regions, saved.version);
  }

  /** Save buffered edits, then split; returns the produced files. */
  async saveAndSplit(): Promise<SplitOutput[]> {
    const fileId = this.requireFile();
    const result = await this.save();
    if (result === "conflict") {
      throw new ApiError(409, "regions changed on the server; resolve the conflict first");
    }
    const { outputs } = await this.api.split(fileId);
    this.lastSplit = outputs;
    return outputs;
  }
}
