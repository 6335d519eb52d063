import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiError, HttpApiClient } from "../src/api";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("HttpApiClient", () => {
  it("posts the factcheck body to the right path", async () => {
    const seen: { url?: string; body?: unknown } = {};
    vi.stubGlobal("fetch", async (url: string, init: RequestInit) => {
      seen.url = url;
      seen.body = JSON.parse(init.body as string);
      return jsonResponse({ document: "d", language: "en", claims: [], verdicts: [] });
    });
    const client = new HttpApiClient("http://backend:8000");
    const report = await client.factcheck("The doc.", "en");
    expect(seen.url).toBe("http://backend:8000/api/v1/factcheck");
    expect(seen.body).toEqual({ document: "The doc.", language: "en" });
    expect(report.claims).toEqual([]);
  });

  it("unwraps the detect claims envelope", async () => {
    vi.stubGlobal("fetch", async () => jsonResponse({ claims: [] }));
    const client = new HttpApiClient("");
    expect(await client.detectClaims("Doc.", "en")).toEqual([]);
  });

  it("non-2xx becomes ApiError with status", async () => {
    vi.stubGlobal("fetch", async () => jsonResponse({ detail: "too large" }, 413));
    const client = new HttpApiClient("");
    await expect(client.verify("claim", "en")).rejects.toMatchObject({
      name: "ApiError",
      status: 413,
    });
  });

  it("network failure becomes ApiError", async () => {
    vi.stubGlobal("fetch", async () => {
      throw new TypeError("fetch failed");
    });
    const client = new HttpApiClient("");
    await expect(client.health()).rejects.toBeInstanceOf(ApiError);
  });
});
