/** Thin client for the pipeline REST API; the editor's only backend access. */

import type { ClaimJson, FactCheckReportJson, HealthJson, VerdictJson } from "./types";

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status?: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export interface ApiClient {
  factcheck(document: string, language: string, signal?: AbortSignal): Promise<FactCheckReportJson>;
  detectClaims(document: string, language: string, signal?: AbortSignal): Promise<ClaimJson[]>;
  verify(claim: string, language: string, signal?: AbortSignal): Promise<VerdictJson>;
  health(signal?: AbortSignal): Promise<HealthJson>;
}

export class HttpApiClient implements ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  private async request<T>(path: string, init: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await fetch(`${this.baseUrl}/api/v1${path}`, {
        headers: { "Content-Type": "application/json" },
        ...init,
      });
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") throw err;
      throw new ApiError(`backend unreachable: ${String(err)}`);
    }
    if (!response.ok) {
      throw new ApiError(`backend returned ${response.status}`, response.status);
    }
    return (await response.json()) as T;
  }

  factcheck(document: string, language: string, signal?: AbortSignal) {
    return this.request<FactCheckReportJson>("/factcheck", {
      method: "POST",
      body: JSON.stringify({ document, language }),
      signal,
    });
  }

  async detectClaims(document: string, language: string, signal?: AbortSignal) {
    const body = await this.request<{ claims: ClaimJson[] }>("/claims/detect", {
      method: "POST",
      body: JSON.stringify({ document, language }),
      signal,
    });
    return body.claims;
  }

  verify(claim: string, language: string, signal?: AbortSignal) {
    return this.request<VerdictJson>("/verify", {
      method: "POST",
      body: JSON.stringify({ claim, language }),
      signal,
    });
  }

  health(signal?: AbortSignal) {
    return this.request<HealthJson>("/health", { method: "GET", signal });
  }
}
