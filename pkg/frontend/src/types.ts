/** Wire types for the fact-checking REST API (snake_case JSON). */

export type ClaimLabel = "check_worthy" | "not_check_worthy";
export type StanceLabel = "supports" | "refutes";
export type VerdictLabel = "supported" | "refuted" | "uncertain";

export interface Span {
  start: number;
  end: number;
}

export interface SentenceJson {
  text: string;
  span: Span;
  language: string;
}

export interface ClaimJson {
  sentence: SentenceJson;
  label: ClaimLabel;
  score: number;
}

export interface EvidenceItemJson {
  url: string;
  normalized_url: string;
  title: string;
  snippet: string;
  source_engine: string;
  similarity?: number;
  stance?: StanceLabel;
  question_index?: number;
  rank?: number;
}

export interface VerdictJson {
  claim: ClaimJson;
  label: VerdictLabel;
  support_votes: number;
  refute_votes: number;
  evidence: EvidenceItemJson[];
  justification?: string;
  correction?: string;
  error?: string;
}

export interface FactCheckReportJson {
  document: string;
  language: string;
  claims: ClaimJson[];
  verdicts: VerdictJson[];
  timings?: Record<string, number>;
  provider_versions?: Record<string, string>;
}

export interface HealthJson {
  status: "ok" | "degraded";
  providers: Record<string, string>;
}
