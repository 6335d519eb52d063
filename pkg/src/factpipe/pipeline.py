"""End-to-end orchestration of the three stages, with caching and per-claim
failure isolation.

A claim whose retrieval or verification breaks degrades to an Uncertain
verdict carrying an error annotation; other claims in the same document are
unaffected. With the stub providers the whole pipeline is a pure function of
(document, language): ``FactCheckReport.canonical_json()`` is byte-identical
across runs (wall-clock timings are diagnostics and excluded from it).
"""

from __future__ import annotations

import hashlib
import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Any

from .claim_detect import detect_batched, resolve_classifier
from .config import PipelineConfig, default_config
from .evidence import (
    default_blocklist,
    deduplicate,
    filter_blocklist,
    load_blocklist,
    resolve_connector,
    resolve_embedder,
    search_all,
    select_top_snippets,
)
from .exceptions import DocumentTooLarge, EmptyGeneration
from .llm import TemplateRegistry, resolve_llm
from .model import (
    Claim,
    ClaimLabel,
    LanguageTag,
    Verdict,
    VerdictLabel,
    canonical_json,
)
from .query_gen import decompose, fallback_question_set
from .segmenter import SegmenterConfig, default_config as default_segmenter_config
from .segmenter import load_abbreviations, segment
from .verdict import aggregate, correct, justify, predict_stances, resolve_nli

logger = logging.getLogger(__name__)

_TEMPLATE_IDS = (
    "question_decomposition",
    "claim_classification",
    "stance_nli",
    "justification_summary",
    "correction",
)


@dataclass(frozen=True)
class FactCheckReport:
    document: str
    language: LanguageTag
    claims: tuple[Claim, ...]
    verdicts: tuple[Verdict, ...]
    timings: dict[str, int] = field(default_factory=dict)
    provider_versions: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        check_worthy = sum(1 for c in self.claims if c.label is ClaimLabel.CHECK_WORTHY)
        if len(self.verdicts) != check_worthy:
            raise ValueError(
                f"{len(self.verdicts)} verdicts for {check_worthy} check-worthy claims"
            )

    def to_json_dict(self, include_timings: bool = True) -> dict[str, Any]:
        d: dict[str, Any] = {
            "document": self.document,
            "language": self.language.code,
            "claims": [c.to_json_dict() for c in self.claims],
            "verdicts": [v.to_json_dict() for v in self.verdicts],
            "provider_versions": dict(self.provider_versions),
        }
        if include_timings:
            d["timings"] = dict(self.timings)
        return d

    def canonical_json(self) -> str:
        """Byte-stable serialization of the report's semantic content.

        Timings vary with the wall clock and are excluded; everything else is
        deterministic under stub providers.
        """
        return canonical_json(self.to_json_dict(include_timings=False))


class VerdictCache:
    """TTL cache for per-claim verdicts; TTL 0 disables storage entirely."""

    def __init__(self, ttl_seconds: float):
        self.ttl = ttl_seconds
        self._lock = threading.Lock()
        self._entries: dict[str, tuple[float, Verdict]] = {}

    def lookup(self, key: str) -> Verdict | None:
        if self.ttl <= 0:
            return None
        try:
            with self._lock:
                entry = self._entries.get(key)
                if entry is None:
                    return None
                expires, verdict = entry
                if time.monotonic() >= expires:
                    del self._entries[key]
                    return None
                return verdict
        except Exception:  # noqa: BLE001 - corruption is a miss, never an error
            return None

    def store(self, key: str, verdict: Verdict) -> None:
        if self.ttl <= 0:
            return
        with self._lock:
            self._entries[key] = (time.monotonic() + self.ttl, verdict)


def _descriptor_fingerprint(descriptor, templates: TemplateRegistry) -> str:
    payload = canonical_json({k: getattr(v, "value", v) for k, v in asdict(descriptor).items()})
    template_id = getattr(descriptor, "prompt_template_id", None)
    if template_id:
        try:
            payload += templates.fingerprint(template_id)
        except Exception:  # noqa: BLE001 - unresolvable ids fail at validation
            pass
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:12]


class Runtime:
    """Resolved provider backends plus shared state (cache, blocklist).

    Built once per service process; tests inject custom backends here for
    call counting and fault injection.
    """

    def __init__(
        self,
        config: PipelineConfig | None = None,
        *,
        classifier=None,
        nli=None,
        llm=None,
        embedder=None,
        search_backends=None,
        templates: TemplateRegistry | None = None,
    ):
        self.config = config or default_config()
        self.templates = templates or TemplateRegistry(self.config.template_dirs)
        self.classifier = classifier or resolve_classifier(self.config.classifier, self.templates)
        self.nli = nli or resolve_nli(self.config.nli, self.templates)
        self.llm = llm or resolve_llm(self.config.llm, self.templates)
        self.embedder = embedder or resolve_embedder(self.config.embedder)
        self.search_backends = list(
            search_backends
            if search_backends is not None
            else (resolve_connector(c) for c in self.config.connectors)
        )
        self.blocklist = (
            load_blocklist(self.config.blocklist_path)
            if self.config.blocklist_path
            else default_blocklist()
        )
        self.segmenter_config = self._build_segmenter_config()
        self.cache = VerdictCache(self.config.cache_ttl_seconds)
        self.provider_versions = self._provider_versions()
        self.fingerprint = hashlib.sha256(
            canonical_json(self.provider_versions).encode("utf-8")
        ).hexdigest()[:16]

    def _build_segmenter_config(self) -> SegmenterConfig:
        abbreviations = dict(default_segmenter_config().abbreviations)
        for lang, path in self.config.abbreviation_files.items():
            abbreviations[lang] = load_abbreviations(path)
        return SegmenterConfig(
            abbreviations=abbreviations,
            min_sentence_chars=self.config.min_sentence_chars,
        )

    def _provider_versions(self) -> dict[str, str]:
        cfg = self.config
        versions = {
            "classifier": f"{cfg.classifier.kind.value}@{_descriptor_fingerprint(cfg.classifier, self.templates)}",
            "nli": f"{cfg.nli.kind.value}@{_descriptor_fingerprint(cfg.nli, self.templates)}",
            "llm": f"{cfg.llm.name}@{_descriptor_fingerprint(cfg.llm, self.templates)}",
            "embedder": f"{cfg.embedder.endpoint}@{_descriptor_fingerprint(cfg.embedder, self.templates)}",
        }
        for connector in cfg.connectors:
            versions[f"search:{connector.engine_id}"] = _descriptor_fingerprint(
                connector, self.templates
            )
        templates_hash = hashlib.sha256(
            "".join(self._template_fingerprints()).encode("utf-8")
        ).hexdigest()[:12]
        versions["templates"] = templates_hash
        return versions

    def _template_fingerprints(self) -> list[str]:
        out = []
        for template_id in _TEMPLATE_IDS:
            try:
                out.append(self.templates.fingerprint(template_id))
            except Exception:  # noqa: BLE001
                continue
        return out

    def health(self) -> dict[str, str]:
        status = {
            "classifier": self.classifier.health(),
            "nli": self.nli.health(),
            "llm": self.llm.health(),
            "embedder": self.embedder.health(),
        }
        for backend in self.search_backends:
            status[f"search:{backend.connector.engine_id}"] = backend.health()
        return status

    def cache_key(self, claim_text: str, language: LanguageTag) -> str:
        raw = canonical_json(
            {"claim": claim_text, "language": language.code, "providers": self.fingerprint}
        )
        return hashlib.sha256(raw.encode("utf-8")).hexdigest()


def check_claim(claim: Claim, runtime: Runtime) -> Verdict:
    """Run one check-worthy claim through retrieval and verification.

    Any stage failure degrades to an Uncertain verdict annotated with the
    error instead of propagating.
    """
    cfg = runtime.config
    key = runtime.cache_key(claim.text, claim.language)
    cached = runtime.cache.lookup(key)
    if cached is not None:
        return replace(cached, claim=claim)

    try:
        try:
            questions = decompose(claim, runtime.llm)
        except EmptyGeneration:
            questions = fallback_question_set(claim)
        items = search_all(
            questions, runtime.search_backends, concurrency=cfg.search_concurrency
        )
        items = deduplicate(
            items,
            runtime.embedder,
            cosine_threshold=cfg.dedup_cosine_threshold,
            jaccard_threshold=cfg.dedup_jaccard_threshold,
        )
        items = filter_blocklist(items, runtime.blocklist)
        top = select_top_snippets(
            claim,
            items,
            runtime.embedder,
            k=cfg.top_k_snippets,
            min_paragraph_chars=cfg.min_paragraph_chars,
        )
        with_stance = predict_stances(
            claim, top, runtime.nli, concurrency=cfg.search_concurrency
        )
        verdict = aggregate(claim, with_stance)
        if verdict.evidence:
            verdict = replace(verdict, justification=justify(verdict, runtime.llm))
        if verdict.label is VerdictLabel.REFUTED:
            verdict = replace(verdict, correction=correct(verdict, runtime.llm))
    except Exception as exc:  # noqa: BLE001 - per-claim isolation is the contract
        logger.warning("claim %r degraded to uncertain: %s", claim.text[:60], exc)
        return Verdict(
            claim=claim,
            label=VerdictLabel.UNCERTAIN,
            support_votes=0,
            refute_votes=0,
            evidence=(),
            error=f"{type(exc).__name__}: {exc}",
        )
    runtime.cache.store(key, verdict)
    return verdict


def run_pipeline(
    document: str,
    language: LanguageTag,
    config: PipelineConfig | None = None,
    runtime: Runtime | None = None,
) -> FactCheckReport:
    """segment -> detect -> (decompose -> search -> dedup -> filter -> select
    -> stance -> aggregate -> justify -> correct) per check-worthy claim."""
    if runtime is None:
        runtime = Runtime(config)
    cfg = runtime.config
    if len(document) > cfg.max_document_chars:
        raise DocumentTooLarge(
            f"document has {len(document)} chars, limit {cfg.max_document_chars}"
        )

    timings: dict[str, int] = {}
    t0 = time.perf_counter()
    sentences = segment(document, language, runtime.segmenter_config)
    timings["segment_ms"] = int((time.perf_counter() - t0) * 1000)

    t1 = time.perf_counter()
    claims = detect_batched(sentences, runtime.classifier, cfg.detection_batch_size)
    timings["detect_ms"] = int((time.perf_counter() - t1) * 1000)

    check_worthy = [c for c in claims if c.label is ClaimLabel.CHECK_WORTHY]
    t2 = time.perf_counter()
    if check_worthy:
        workers = min(cfg.claim_concurrency, len(check_worthy))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            verdicts = tuple(pool.map(lambda c: check_claim(c, runtime), check_worthy))
    else:
        verdicts = ()
    timings["verify_ms"] = int((time.perf_counter() - t2) * 1000)
    timings["total_ms"] = int((time.perf_counter() - t0) * 1000)

    return FactCheckReport(
        document=document,
        language=language,
        claims=tuple(claims),
        verdicts=verdicts,
        timings=timings,
        provider_versions=runtime.provider_versions,
    )
