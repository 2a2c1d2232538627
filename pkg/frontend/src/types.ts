/** Shared data shapes, mirroring the HTTP API payloads. */

export interface Rect {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

export interface RegionState {
  id: number;
  boundary: Rect;
}

export type RGB = [number, number, number];

export interface GridData {
  id: string;
  rows: number;
  cols: number;
  cells: string[][];
  values: string[][];
  colors: Record<string, RGB>;
}

export interface UploadResult {
  id: string;
  rows: number;
  cols: number;
  version: number;
}

export interface RegionsPayload {
  version: number;
  regions: RegionState[];
}

export interface SplitOutput {
  region_id: number;
  name: string;
  content: string;
}

export interface TemplateData {
  id: number;
  files: string[];
  region_matches: { entry: number; files: string[] }[];
}

export interface TemplateSetData {
  templates: TemplateData[];
}

export interface FileListEntry {
  id: string;
  rows: number;
  cols: number;
  regions: number;
  version: number;
}

export interface DetectParams {
  alpha?: number;
  beta?: number;
  gamma?: number;
  radius?: number;
}

export interface EditCounts {
  resizes: number;
  adds: number;
  deletes: number;
  total: number;
}
