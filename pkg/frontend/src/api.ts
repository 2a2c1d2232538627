/** Typed client for the region-detection HTTP service. */

import type {
  DetectParams,
  FileListEntry,
  GridData,
  Rect,
  RegionsPayload,
  SplitOutput,
  TemplateSetData,
  UploadResult,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly code: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response: Response;
    try {
      response = await fetch(this.base + path, {
        method,
        headers: body === undefined ? {} : { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      throw new ApiError(0, `service unreachable: ${String(err)}`);
    }
    if (!response.ok) {
      let message = response.statusText;
      try {
        const payload = (await response.json()) as { message?: string };
        if (payload.message) message = payload.message;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, message);
    }
    return (await response.json()) as T;
  }

  upload(name: string, content: string): Promise<UploadResult> {
    return this.request("POST", "/files", { name, content });
  }

  listFiles(): Promise<{ files: FileListEntry[] }> {
    return this.request("GET", "/files");
  }

  grid(id: string): Promise<GridData> {
    return this.request("GET", `/files/${encodeURIComponent(id)}/grid`);
  }

  detect(id: string, params: DetectParams = {}): Promise<RegionsPayload> {
    return this.request("POST", `/files/${encodeURIComponent(id)}/detect`, params);
  }

  getRegions(id: string): Promise<RegionsPayload> {
    return this.request("GET", `/files/${encodeURIComponent(id)}/regions`);
  }

  putRegions(id: string, regions: Rect[], version: number): Promise<RegionsPayload> {
    return this.request("PUT", `/files/${encodeURIComponent(id)}/regions`, {
      version,
      regions,
    });
  }

  split(id: string): Promise<{ outputs: SplitOutput[] }> {
    return this.request("POST", `/files/${encodeURIComponent(id)}/split`);
  }

  templates(): Promise<TemplateSetData> {
    return this.request("GET", "/templates");
  }

  inferTemplates(tauR?: number, tauF?: number): Promise<TemplateSetData> {
    return this.request("POST", "/corpus/infer", { tau_r: tauR, tau_f: tauF });
  }
}
