import { readFileSync } from "node:fs";

import type { ApiClient } from "../src/api";
import { ApiError } from "../src/api";
import type {
  ClaimJson,
  FactCheckReportJson,
  VerdictJson,
} from "../src/types";

/** The golden report frozen by the backend's test suite (single source). */
export function goldenReport(): FactCheckReportJson {
  const path = new URL("../../tests/data/golden_report.json", import.meta.url);
  return JSON.parse(readFileSync(path, "utf-8")) as FactCheckReportJson;
}

export function makeClaim(
  start: number,
  text: string,
  label: ClaimJson["label"] = "check_worthy",
): ClaimJson {
  return {
    sentence: { text, span: { start, end: start + text.length }, language: "en" },
    label,
    score: label === "check_worthy" ? 0.9 : 0.1,
  };
}

export function makeVerdict(
  claim: ClaimJson,
  label: VerdictJson["label"],
  extras: Partial<VerdictJson> = {},
): VerdictJson {
  return {
    claim,
    label,
    support_votes: 0,
    refute_votes: 0,
    evidence: [],
    ...extras,
  };
}

/** ApiClient double whose factcheck behavior is scripted per call. */
export class FakeApiClient implements ApiClient {
  calls = 0;
  private queue: Array<() => Promise<FactCheckReportJson>> = [];

  enqueueReport(report: FactCheckReportJson): void {
    this.queue.push(() => Promise.resolve(report));
  }

  enqueueFailure(message = "backend unreachable: connection refused"): void {
    this.queue.push(() => Promise.reject(new ApiError(message)));
  }

  enqueueDeferred(): {
    resolve: (report: FactCheckReportJson) => void;
    reject: (err: Error) => void;
  } {
    let resolve!: (report: FactCheckReportJson) => void;
    let reject!: (err: Error) => void;
    const promise = new Promise<FactCheckReportJson>((res, rej) => {
      resolve = res;
      reject = rej;
    });
    this.queue.push(() => promise);
    return { resolve, reject };
  }

  factcheck(): Promise<FactCheckReportJson> {
    this.calls++;
    const next = this.queue.shift();
    if (!next) throw new Error("FakeApiClient: no scripted response");
    return next();
  }

  detectClaims(): Promise<ClaimJson[]> {
    return Promise.resolve([]);
  }

  verify(): Promise<VerdictJson> {
    return Promise.reject(new ApiError("not scripted"));
  }

  health(): Promise<{ status: "ok" | "degraded"; providers: Record<string, string> }> {
    return Promise.resolve({ status: "ok", providers: {} });
  }
}
