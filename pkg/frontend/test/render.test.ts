import { describe, expect, it } from "vitest";

import {
  countHighlights,
  escapeHtml,
  renderBadge,
  renderBanner,
  renderDocument,
  renderEvidencePanel,
} from "../src/render";
import { annotationsFromReport, initialState } from "../src/state";
import type { EditorState } from "../src/state";
import { goldenReport, makeClaim, makeVerdict } from "./helpers";

function goldenState(): EditorState {
  const golden = goldenReport();
  return {
    ...initialState("en"),
    document: golden.document,
    annotations: annotationsFromReport(golden),
  };
}

describe("renderDocument", () => {
  it("wraps exactly the check-worthy spans in marks", () => {
    const golden = goldenReport();
    const html = renderDocument(goldenState());
    const expected = golden.claims.filter((c) => c.label === "check_worthy").length;
    expect(countHighlights(html)).toBe(expected);
  });

  it("mark offsets equal the API spans and never overlap", () => {
    const html = renderDocument(goldenState());
    const spans = [...html.matchAll(/data-start="(\d+)" data-end="(\d+)"/g)].map((m) => [
      Number(m[1]),
      Number(m[2]),
    ]);
    expect(spans.length).toBeGreaterThan(0);
    for (let i = 1; i < spans.length; i++) {
      expect(spans[i]![0]!).toBeGreaterThanOrEqual(spans[i - 1]![1]!); // no overlap
    }
    const golden = goldenReport();
    const apiSpans = golden.claims
      .filter((c) => c.label === "check_worthy")
      .map((c) => [c.sentence.span.start, c.sentence.span.end]);
    expect(spans).toEqual(apiSpans);
  });

  it("stripping tags yields the escaped document", () => {
    const state = goldenState();
    const stripped = renderDocument(state).replace(/<[^>]+>/g, "");
    expect(stripped).toBe(escapeHtml(state.document));
  });

  it("escapes hostile document text", () => {
    const state: EditorState = {
      ...initialState("en"),
      document: `<script>alert("x")</script>`,
    };
    const html = renderDocument(state);
    expect(html).not.toContain("<script>");
    expect(html).toContain("&lt;script&gt;");
  });

  it("badge classes are distinct per verdict", () => {
    const claim = makeClaim(0, "Some claim 1.");
    const labels = ["supported", "refuted", "uncertain"] as const;
    const classes = labels.map((label) => {
      const annotation = annotationsFromReport({
        document: "Some claim 1.",
        language: "en",
        claims: [claim],
        verdicts: [makeVerdict(claim, label)],
      })[0]!;
      const match = renderBadge(annotation).match(/class="([^"]+)"/);
      return match?.[1];
    });
    expect(new Set(classes).size).toBe(3);
  });
});

describe("renderEvidencePanel", () => {
  it("lists sources as links", () => {
    const golden = goldenReport();
    const annotation = annotationsFromReport(golden).find(
      (a) => a.claimLabel === "check_worthy",
    )!;
    const html = renderEvidencePanel(annotation);
    for (const item of annotation.evidence) {
      expect(html).toContain(`href="${item.url}"`);
    }
    expect(html).toContain("justification");
  });

  it("shows the accept button only for refuted claims with a correction", () => {
    const claim = makeClaim(0, "Some claim 1.");
    const refuted = annotationsFromReport({
      document: "Some claim 1.",
      language: "en",
      claims: [claim],
      verdicts: [makeVerdict(claim, "refuted", { correction: "Fixed claim 2." })],
    })[0]!;
    expect(renderEvidencePanel(refuted)).toContain("accept-correction");

    const supported = annotationsFromReport({
      document: "Some claim 1.",
      language: "en",
      claims: [claim],
      verdicts: [makeVerdict(claim, "supported")],
    })[0]!;
    expect(renderEvidencePanel(supported)).not.toContain("accept-correction");
  });

  it("uncertain verdicts render a neutral explanatory note", () => {
    const claim = makeClaim(0, "Some claim 1.");
    const annotation = annotationsFromReport({
      document: "Some claim 1.",
      language: "en",
      claims: [claim],
      verdicts: [makeVerdict(claim, "uncertain")],
    })[0]!;
    const html = renderEvidencePanel(annotation);
    expect(html).toContain("badge--uncertain");
    expect(html).toContain("excluded");
  });

  it("failed claims show the error annotation", () => {
    const claim = makeClaim(0, "Some claim 1.");
    const annotation = annotationsFromReport({
      document: "Some claim 1.",
      language: "en",
      claims: [claim],
      verdicts: [makeVerdict(claim, "uncertain", { error: "AllConnectorsFailed: boom" })],
    })[0]!;
    expect(renderEvidencePanel(annotation)).toContain("AllConnectorsFailed");
  });

  it("empty selection prompts for a claim", () => {
    expect(renderEvidencePanel(undefined)).toContain("Select a highlighted claim");
  });
});

describe("renderBanner", () => {
  it("is empty without an error", () => {
    expect(renderBanner(initialState("en"))).toBe("");
  });

  it("renders and escapes the error message", () => {
    const state = { ...initialState("en"), errorBanner: `backend <down>` };
    const html = renderBanner(state);
    expect(html).toContain("banner--error");
    expect(html).toContain("&lt;down&gt;");
  });
});
