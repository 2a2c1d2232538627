/** DOM wiring: sidebar controls, canvas interactions, downloads. */

import { ApiClient, ApiError } from "./api.js";
import { type Handle } from "./geometry.js";
import { GridView, type Viewport, cellAtPoint, hitTestRegion } from "./gridview.js";
import { Session } from "./session.js";
import { showToast } from "./toast.js";
import type { DetectParams, SplitOutput } from "./types.js";

const api = new ApiClient("");
const session = new Session(api);

const canvas = document.getElementById("grid") as HTMLCanvasElement;
const scroller = document.getElementById("scroller") as HTMLDivElement;
const sizer = document.getElementById("sizer") as HTMLDivElement;
const tooltip = document.getElementById("tooltip") as HTMLDivElement;

const viewport: Viewport = { scrollX: 0, scrollY: 0, width: 0, height: 0, cellSize: 14 };
const view = new GridView(canvas, viewport);

type DragState =
  | { kind: "none" }
  | { kind: "move"; index: number; lastX: number; lastY: number }
  | { kind: "resize"; index: number; handle: Handle }
  | { kind: "create"; index: number; anchorX: number; anchorY: number };

let drag: DragState = { kind: "none" };

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function detectParams(): DetectParams {
  const value = (id: string) => {
    const raw = byId<HTMLInputElement>(id).value.trim();
    return raw === "" ? undefined : Number(raw);
  };
  return { alpha: value("alpha"), beta: value("beta"), gamma: value("gamma"), radius: value("radius") };
}

function syncCanvasSize(): void {
  viewport.width = scroller.clientWidth;
  viewport.height = scroller.clientHeight;
  canvas.width = viewport.width;
  canvas.height = viewport.height;
  const content = view.contentSize();
  sizer.style.width = `${content.width}px`;
  sizer.style.height = `${content.height}px`;
}

function refresh(): void {
  view.setGrid(session.grid);
  view.setRegions(session.regions, session.selected);
  syncCanvasSize();
  view.render();
  renderSidebar();
}

function renderSidebar(): void {
  const counts = session.counts();
  byId("edit-counts").textContent =
    `${counts.total} edits (${counts.resizes} resizes, ${counts.adds} adds, ${counts.deletes} deletes)`;
  byId("file-label").textContent = session.fileId ?? "no file loaded";
  byId<HTMLButtonElement>("save").disabled = !session.dirty;

  const list = byId<HTMLUListElement>("region-list");
  list.replaceChildren();
  session.regions.forEach((region, index) => {
    const item = document.createElement("li");
    const b = region.boundary;
    item.textContent = `r${region.id}: (${b.x0},${b.y0})-(${b.x1},${b.y1})`;
    if (index === session.selected) item.classList.add("selected");
    item.onclick = () => {
      session.selected = index;
      refresh();
    };
    const remove = document.createElement("button");
    remove.textContent = "x";
    remove.title = "delete region";
    remove.onclick = (event) => {
      event.stopPropagation();
      session.deleteRegion(index);
      refresh();
    };
    item.appendChild(remove);
    list.appendChild(item);
  });

  byId("conflict").hidden = session.conflict === null;
}

function renderDownloads(outputs: SplitOutput[]): void {
  const list = byId<HTMLUListElement>("downloads");
  list.replaceChildren();
  for (const output of outputs) {
    const item = document.createElement("li");
    const link = document.createElement("a");
    link.textContent = output.name;
    link.href = URL.createObjectURL(new Blob([output.content], { type: "text/csv" }));
    link.download = output.name;
    item.appendChild(link);
    const preview = document.createElement("pre");
    preview.textContent = output.content.split("\n").slice(0, 3).join("\n");
    item.appendChild(preview);
    list.appendChild(item);
  }
}

async function renderTemplates(): Promise<void> {
  const data = await api.templates();
  const list = byId<HTMLUListElement>("templates");
  list.replaceChildren();
  for (const template of data.templates) {
    const item = document.createElement("li");
    item.textContent = `template ${template.id}: ${template.files.join(", ")}`;
    list.appendChild(item);
  }
}

function guard(task: () => Promise<void>): void {
  task().catch((err) => {
    const message = err instanceof ApiError ? `${err.code || "network"}: ${err.message}` : String(err);
    showToast(message, "error");
    refresh();
  });
}

// -- sidebar actions ---------------------------------------------------

byId<HTMLInputElement>("file-input").addEventListener("change", (event) => {
  const input = event.target as HTMLInputElement;
  const file = input.files?.[0];
  if (!file) return;
  guard(async () => {
    const content = await file.text();
    await session.loadAndDetect(file.name, content, detectParams());
    showToast(`detected ${session.regions.length} regions in ${file.name}`);
    refresh();
  });
});

byId<HTMLButtonElement>("redetect").addEventListener("click", () =>
  guard(async () => {
    await session.redetect(detectParams());
    showToast(`detected ${session.regions.length} regions`);
    refresh();
  }),
);

byId<HTMLButtonElement>("save").addEventListener("click", () =>
  guard(async () => {
    const result = await session.save();
    if (result === "conflict") showToast("regions changed on the server", "error");
    else showToast(result === "saved" ? "saved" : "nothing to save");
    refresh();
  }),
);

byId<HTMLButtonElement>("split").addEventListener("click", () =>
  guard(async () => {
    const outputs = await session.saveAndSplit();
    renderDownloads(outputs);
    showToast(`split into ${outputs.length} files`);
    refresh();
  }),
);

byId<HTMLButtonElement>("undo").addEventListener("click", () => {
  if (session.undo()) refresh();
});

byId<HTMLButtonElement>("add-region").addEventListener("click", () => {
  if (!session.grid) return;
  session.addRegion({ x0: 0, y0: 0, x1: Math.min(3, session.grid.cols - 1), y1: Math.min(3, session.grid.rows - 1) });
  refresh();
});

byId<HTMLButtonElement>("conflict-take-server").addEventListener("click", () =>
  guard(async () => {
    await session.resolveConflict("take-server");
    showToast("reloaded server regions");
    refresh();
  }),
);

byId<HTMLButtonElement>("conflict-keep-mine").addEventListener("click", () =>
  guard(async () => {
    await session.resolveConflict("keep-mine");
    showToast("saved over server regions");
    refresh();
  }),
);

byId<HTMLButtonElement>("infer").addEventListener("click", () =>
  guard(async () => {
    await api.inferTemplates();
    await renderTemplates();
    showToast("templates inferred");
  }),
);

byId<HTMLSelectElement>("zoom").addEventListener("change", (event) => {
  viewport.cellSize = Number((event.target as HTMLSelectElement).value);
  refresh();
});

document.addEventListener("keydown", (event) => {
  if ((event.ctrlKey || event.metaKey) && event.key === "z") {
    if (session.undo()) refresh();
    event.preventDefault();
  }
});

// -- canvas interactions -----------------------------------------------

scroller.addEventListener("scroll", () => {
  viewport.scrollX = scroller.scrollLeft;
  viewport.scrollY = scroller.scrollTop;
  view.render();
});

canvas.addEventListener("mousedown", (event) => {
  if (!session.grid) return;
  const px = event.offsetX;
  const py = event.offsetY;
  const cell = cellAtPoint(px, py, viewport, session.grid);

  if (session.selected !== null) {
    const region = session.regions[session.selected];
    if (region) {
      const hit = hitTestRegion(px, py, region.boundary, viewport);
      if (hit?.kind === "handle") {
        drag = { kind: "resize", index: session.selected, handle: hit.handle };
        return;
      }
      if (hit?.kind === "inside" && cell) {
        drag = { kind: "move", index: session.selected, lastX: cell.x, lastY: cell.y };
        return;
      }
    }
  }
  if (!cell) return;
  const hitIndex = session.regions.findIndex((r) => {
    const b = r.boundary;
    return cell.x >= b.x0 && cell.x <= b.x1 && cell.y >= b.y0 && cell.y <= b.y1;
  });
  if (hitIndex >= 0) {
    session.selected = hitIndex;
    drag = { kind: "move", index: hitIndex, lastX: cell.x, lastY: cell.y };
  } else {
    const index = session.addRegion({ x0: cell.x, y0: cell.y, x1: cell.x, y1: cell.y });
    drag = { kind: "create", index, anchorX: cell.x, anchorY: cell.y };
  }
  refresh();
});

canvas.addEventListener("mousemove", (event) => {
  if (!session.grid) return;
  const px = event.offsetX;
  const py = event.offsetY;
  const cell = cellAtPoint(px, py, viewport, session.grid);

  if (cell) {
    const value = session.grid.values[cell.y]?.[cell.x] ?? "";
    tooltip.textContent = value ? `(${cell.x},${cell.y}) ${value}` : `(${cell.x},${cell.y})`;
    tooltip.style.left = `${event.clientX + 12}px`;
    tooltip.style.top = `${event.clientY + 12}px`;
    tooltip.hidden = false;
  } else {
    tooltip.hidden = true;
  }

  if (drag.kind === "none" || !cell) return;
  if (drag.kind === "move") {
    const dx = cell.x - drag.lastX;
    const dy = cell.y - drag.lastY;
    if (dx || dy) {
      session.moveRegion(drag.index, dx, dy);
      drag.lastX = cell.x;
      drag.lastY = cell.y;
      refresh();
    }
  } else if (drag.kind === "resize") {
    session.resizeRegion(drag.index, drag.handle, cell.x, cell.y);
    refresh();
  } else {
    session.resizeRegion(drag.index, "se", Math.max(cell.x, drag.anchorX), Math.max(cell.y, drag.anchorY));
    refresh();
  }
});

window.addEventListener("mouseup", () => {
  drag = { kind: "none" };
});

window.addEventListener("resize", refresh);

refresh();
void renderTemplates().catch(() => showToast("service unreachable", "error"));
