/** HTML-string rendering: document highlights, verdict badges, evidence
 * panel, and the error banner. Framework-free so the logic is testable
 * without a DOM. */

import type { Annotation, EditorState } from "./state";
import type { EvidenceItemJson } from "./types";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

const BADGE_CLASS: Record<string, string> = {
  supported: "badge badge--supported",
  refuted: "badge badge--refuted",
  uncertain: "badge badge--uncertain",
};

export function renderBadge(annotation: Annotation): string {
  if (!annotation.verdictLabel) return "";
  const cls = BADGE_CLASS[annotation.verdictLabel] ?? "badge";
  const votes =
    annotation.supportVotes !== undefined
      ? ` ${annotation.supportVotes}–${annotation.refuteVotes}`
      : "";
  return `<span class="${cls}">${escapeHtml(annotation.verdictLabel)}${votes}</span>`;
}

/** The document with check-worthy spans wrapped in <mark> highlights.
 * Spans are rendered in offset order and never overlap. */
export function renderDocument(state: EditorState): string {
  const sorted = [...state.annotations].sort((a, b) => a.span.start - b.span.start);
  const parts: string[] = [];
  let cursor = 0;
  for (const annotation of sorted) {
    const { start, end } = annotation.span;
    if (start < cursor || end > state.document.length) continue; // defensive: skip bad spans
    parts.push(escapeHtml(state.document.slice(cursor, start)));
    const text = escapeHtml(state.document.slice(start, end));
    if (annotation.claimLabel === "check_worthy") {
      const verdict = annotation.verdictLabel ?? "pending";
      parts.push(
        `<mark class="claim claim--${verdict}" data-id="${annotation.id}"` +
          ` data-start="${start}" data-end="${end}">${text}</mark>`,
      );
    } else {
      parts.push(text);
    }
    cursor = end;
  }
  parts.push(escapeHtml(state.document.slice(cursor)));
  return parts.join("");
}

export function countHighlights(html: string): number {
  return (html.match(/<mark /g) ?? []).length;
}

function renderEvidenceItem(item: EvidenceItemJson): string {
  const similarity = item.similarity !== undefined ? ` · sim ${item.similarity.toFixed(2)}` : "";
  const stance = item.stance ? ` · ${escapeHtml(item.stance)}` : "";
  return (
    `<li class="evidence">` +
    `<a href="${escapeHtml(item.url)}" target="_blank" rel="noopener noreferrer">` +
    `${escapeHtml(item.title)}</a>` +
    `<span class="evidence-meta">${escapeHtml(item.source_engine)}${stance}${similarity}</span>` +
    `<p class="evidence-snippet">${escapeHtml(item.snippet)}</p>` +
    `</li>`
  );
}

/** Side panel for one annotation: badge, evidence links, justification,
 * and the accept-correction affordance (only when one exists). */
export function renderEvidencePanel(annotation: Annotation | undefined): string {
  if (!annotation) return `<p class="panel-empty">Select a highlighted claim.</p>`;
  const parts = [
    `<h3>${escapeHtml(annotation.text)}</h3>`,
    renderBadge(annotation),
  ];
  if (annotation.error) {
    parts.push(`<p class="panel-error">Not checked: ${escapeHtml(annotation.error)}</p>`);
  }
  if (annotation.verdictLabel === "uncertain" && !annotation.error) {
    parts.push(`<p class="panel-note">The evidence was tied or missing; excluded from scoring.</p>`);
  }
  if (annotation.evidence.length > 0) {
    parts.push(`<ul class="evidence-list">${annotation.evidence.map(renderEvidenceItem).join("")}</ul>`);
  }
  if (annotation.justification) {
    parts.push(`<p class="justification">${escapeHtml(annotation.justification)}</p>`);
  }
  if (annotation.verdictLabel === "refuted" && annotation.correction != null) {
    parts.push(
      `<div class="correction">` +
        `<p>${escapeHtml(annotation.correction)}</p>` +
        `<button data-action="accept-correction" data-id="${annotation.id}">` +
        `Accept correction</button>` +
        `</div>`,
    );
  }
  return parts.join("\n");
}

export function renderBanner(state: EditorState): string {
  if (!state.errorBanner) return "";
  return `<div class="banner banner--error" role="alert">${escapeHtml(state.errorBanner)}</div>`;
}
