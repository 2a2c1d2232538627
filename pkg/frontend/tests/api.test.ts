import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("ApiClient", () => {
  it("sends JSON bodies and parses JSON responses", async () => {
    const fetchMock = vi.fn(async (url: RequestInfo | URL, init?: RequestInit) => {
      expect(String(url)).toBe("/files");
      expect(init?.method).toBe("POST");
      expect(JSON.parse(String(init?.body))).toEqual({ name: "a.csv", content: "x\n" });
      return jsonResponse(200, { id: "a.csv", rows: 1, cols: 1, version: 1 });
    });
    vi.stubGlobal("fetch", fetchMock);
    const client = new ApiClient("");
    const uploaded = await client.upload("a.csv", "x\n");
    expect(uploaded.id).toBe("a.csv");
  });

  it("maps service errors onto ApiError with code and message", async () => {
    vi.stubGlobal("fetch", vi.fn(async () => jsonResponse(409, { code: 409, message: "stale token" })));
    const client = new ApiClient("");
    const error = await client.putRegions("a.csv", [], 1).catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.code).toBe(409);
    expect(error.message).toBe("stale token");
  });

  it("keeps the status text when the error body is not JSON", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () => new Response("boom", { status: 500, statusText: "Internal Server Error" })),
    );
    const error = await new ApiClient("").templates().catch((e) => e);
    expect(error.code).toBe(500);
    expect(error.message).toBe("Internal Server Error");
  });

  it("reports unreachable services as code 0", async () => {
    vi.stubGlobal("fetch", vi.fn(async () => {
      throw new TypeError("fetch failed");
    }));
    const error = await new ApiClient("").listFiles().catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.code).toBe(0);
  });

  it("escapes file ids in paths", async () => {
    const fetchMock = vi.fn(async (url: RequestInfo | URL) => {
      expect(String(url)).toBe("/files/a%20b.csv/grid");
      return jsonResponse(200, { id: "a b.csv", rows: 0, cols: 0, cells: [], values: [], colors: {} });
    });
    vi.stubGlobal("fetch", fetchMock);
    await new ApiClient("").grid("a b.csv");
  });
});
