/** Editor state and transitions.
 *
 * Annotations anchor to character offsets in the text that was submitted for
 * checking. Any later edit either shifts spans (edits strictly before/after)
 * or invalidates exactly the annotations whose spans the edit touches; there
 * is no fuzzy re-anchoring. Only one fact-check request is in flight at a
 * time; a new submission aborts the previous one.
 */

import type { ApiClient } from "./api";
import type {
  ClaimLabel,
  EvidenceItemJson,
  FactCheckReportJson,
  Span,
  VerdictLabel,
} from "./types";

export interface Annotation {
  id: string;
  span: Span;
  text: string;
  claimLabel: ClaimLabel;
  score: number;
  verdictLabel?: VerdictLabel;
  supportVotes?: number;
  refuteVotes?: number;
  evidence: EvidenceItemJson[];
  justification?: string;
  correction?: string;
  error?: string;
}

export interface EditorState {
  document: string;
  language: string;
  annotations: Annotation[];
  pendingRequest: boolean;
  errorBanner: string | null;
}

export interface TextEdit {
  start: number;
  end: number;
  insert: string;
}

export function initialState(language = "en"): EditorState {
  return {
    document: "",
    language,
    annotations: [],
    pendingRequest: false,
    errorBanner: null,
  };
}

/** Minimal edit between two texts via longest common prefix/suffix. */
export function diffEdit(oldText: string, newText: string): TextEdit | null {
  if (oldText === newText) return null;
  let prefix = 0;
  const maxPrefix = Math.min(oldText.length, newText.length);
  while (prefix < maxPrefix && oldText[prefix] === newText[prefix]) prefix++;
  let suffix = 0;
  while (
    suffix < maxPrefix - prefix &&
    oldText[oldText.length - 1 - suffix] === newText[newText.length - 1 - suffix]
  ) {
    suffix++;
  }
  return {
    start: prefix,
    end: oldText.length - suffix,
    insert: newText.slice(prefix, newText.length - suffix),
  };
}

/** Build annotations from a report: one per sentence, verdict data attached
 * to the check-worthy ones (the API returns one verdict per such claim). */
export function annotationsFromReport(report: FactCheckReportJson): Annotation[] {
  const verdictBySpan = new Map(
    report.verdicts.map((v) => [`${v.claim.sentence.span.start}:${v.claim.sentence.span.end}`, v]),
  );
  return report.claims.map((claim, index) => {
    const span = claim.sentence.span;
    const verdict = verdictBySpan.get(`${span.start}:${span.end}`);
    return {
      id: `claim-${index}`,
      span: { ...span },
      text: claim.sentence.text,
      claimLabel: claim.label,
      score: claim.score,
      verdictLabel: verdict?.label,
      supportVotes: verdict?.support_votes,
      refuteVotes: verdict?.refute_votes,
      evidence: verdict?.evidence ?? [],
      justification: verdict?.justification,
      correction: verdict?.correction,
      error: verdict?.error,
    };
  });
}

function shiftAnnotations(annotations: Annotation[], edit: TextEdit): Annotation[] {
  const delta = edit.insert.length - (edit.end - edit.start);
  const kept: Annotation[] = [];
  for (const annotation of annotations) {
    const { start, end } = annotation.span;
    if (end <= edit.start) {
      kept.push(annotation); // entirely before the edit
    } else if (start >= edit.end) {
      kept.push({ ...annotation, span: { start: start + delta, end: end + delta } });
    }
    // overlapping the edited range: invalidated (dropped)
  }
  return kept;
}

export class Editor {
  state: EditorState;
  private inflight: AbortController | null = null;
  private listeners: Array<(state: EditorState) => void> = [];

  constructor(
    private readonly api: ApiClient,
    language = "en",
  ) {
    this.state = initialState(language);
  }

  onChange(listener: (state: EditorState) => void): void {
    this.listeners.push(listener);
  }

  private update(partial: Partial<EditorState>): void {
    this.state = { ...this.state, ...partial };
    for (const listener of this.listeners) listener(this.state);
  }

  setLanguage(language: string): void {
    this.update({ language });
  }

  /** Apply a ranged edit: spans shift around it, touched annotations clear. */
  applyEdit(edit: TextEdit): void {
    const document =
      this.state.document.slice(0, edit.start) +
      edit.insert +
      this.state.document.slice(edit.end);
    this.update({
      document,
      annotations: shiftAnnotations(this.state.annotations, edit),
    });
  }

  /** Replace the whole text, deriving the minimal edit (textarea binding). */
  setDocument(newText: string): void {
    const edit = diffEdit(this.state.document, newText);
    if (edit) this.applyEdit(edit);
  }

  canRunCheck(): boolean {
    return this.state.document.trim().length > 0 && !this.state.pendingRequest;
  }

  /** POST the document for fact-checking. A new submission cancels the prior
   * one; backend failure shows a banner and preserves existing state. */
  async runCheck(): Promise<void> {
    if (this.state.document.trim().length === 0) return;
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    const submitted = this.state.document;
    this.update({ pendingRequest: true, errorBanner: null });
    let report: FactCheckReportJson;
    try {
      report = await this.api.factcheck(submitted, this.state.language, controller.signal);
    } catch (err) {
      if (controller.signal.aborted) return; // superseded by a newer submission
      this.inflight = null;
      this.update({
        pendingRequest: false,
        errorBanner: err instanceof Error ? err.message : String(err),
      });
      return;
    }
    if (controller.signal.aborted) return;
    this.inflight = null;
    if (this.state.document !== submitted) {
      // the user kept typing; anchor nothing rather than anchor wrongly
      this.update({ pendingRequest: false });
      return;
    }
    this.update({
      pendingRequest: false,
      errorBanner: null,
      annotations: annotationsFromReport(report),
    });
  }

  /** Accepting is offered only for refuted verdicts that carry a correction. */
  canAcceptCorrection(id: string): boolean {
    const annotation = this.state.annotations.find((a) => a.id === id);
    return (
      annotation !== undefined &&
      annotation.verdictLabel === "refuted" &&
      typeof annotation.correction === "string"
    );
  }

  /** Replace the refuted sentence with its correction and clear that
   * annotation; later spans shift. Re-accepting is a no-op. */
  acceptCorrection(id: string): void {
    const annotation = this.state.annotations.find((a) => a.id === id);
    if (!annotation || annotation.verdictLabel !== "refuted" || annotation.correction == null) {
      return;
    }
    this.applyEdit({
      start: annotation.span.start,
      end: annotation.span.end,
      insert: annotation.correction,
    });
  }
}
