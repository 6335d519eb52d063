"""Evidence retrieval: multi-engine search fan-out, URL canonicalization,
deduplication, credibility blocklist filtering, and top-k paragraph selection
by embedding similarity.

Search connectors share one wire format: ``POST {"query", "max_results"}`` ->
``{"results": [{"title", "url", "snippet", "rank"}]}``. Connectors whose
endpoint is ``local-stub`` produce deterministic synthetic results so the
whole stage runs offline.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import re
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Sequence
from urllib.parse import parse_qsl, urlencode, urlsplit

import httpx
import numpy as np

from .exceptions import (
    AllConnectorsFailed,
    EmbedderUnavailable,
    MalformedUrl,
    ProviderMalformedResponse,
    ProviderUnavailable,
)
from .llm import LOCAL_STUB
from .model import Claim, EvidenceItem
from .query_gen import QuestionSet

logger = logging.getLogger(__name__)

TRACKING_PARAMS = {"fbclid", "gclid"}
_HOST_RE = re.compile(r"^[a-z0-9]([a-z0-9.-]*[a-z0-9])?$")
_PARAGRAPH_SPLIT = re.compile(r"\n\s*\n")

DEDUP_COSINE_THRESHOLD = 0.90
DEDUP_JACCARD_THRESHOLD = 0.80
MIN_PARAGRAPH_CHARS = 40
_UNRANKED = 10**9


# ---------------------------------------------------------------------------
# descriptors

@dataclass(frozen=True)
class SearchConnector:
    engine_id: str
    endpoint: str = LOCAL_STUB
    api_key_env: str | None = None
    max_results: int = 10
    rate_per_sec: float | None = None
    timeout: float = 10.0

    def __post_init__(self):
        if not self.engine_id:
            raise ValueError("engine_id must be non-empty")
        if self.max_results < 1:
            raise ValueError("max_results must be >= 1")
        if self.rate_per_sec is not None and self.rate_per_sec <= 0:
            raise ValueError("rate_per_sec must be positive")


@dataclass(frozen=True)
class EmbeddingProvider:
    endpoint: str = LOCAL_STUB
    dimension: int = 64
    timeout: float = 10.0

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")

    @property
    def is_stub(self) -> bool:
        return self.endpoint == LOCAL_STUB


@dataclass(frozen=True)
class Blocklist:
    domains: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        for d in self.domains:
            if "://" in d or "/" in d or d != d.lower() or not d:
                raise ValueError(f"blocklist entry {d!r} must be a bare lowercase domain")

    def blocks_host(self, host: str) -> bool:
        """True when the host or any parent domain is listed."""
        parts = host.lower().split(".")
        return any(".".join(parts[i:]) in self.domains for i in range(len(parts)))


def load_blocklist(path: str | Path) -> Blocklist:
    """One domain per line, '#' comments, UTF-8."""
    domains = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            domains.add(line.lower())
    return Blocklist(domains=frozenset(domains))


def default_blocklist() -> Blocklist:
    text = resources.files("factpipe").joinpath("data/blocklist.txt").read_text("utf-8")
    domains = frozenset(
        line.strip().lower()
        for line in text.splitlines()
        if line.strip() and not line.strip().startswith("#")
    )
    return Blocklist(domains=domains)


# ---------------------------------------------------------------------------
# URL normalization

def normalize_url(raw: str) -> str:
    """Canonical URL form: lowercase host, no scheme, no leading "www.",
    no trailing slash, tracking params removed, remaining params sorted."""
    if not isinstance(raw, str) or not raw.strip():
        raise MalformedUrl("empty URL")
    s = raw.strip()
    try:
        parts = urlsplit(s if "://" in s else "//" + s)
        host = parts.hostname
        port = parts.port
    except ValueError as exc:
        raise MalformedUrl(f"{raw!r}: {exc}") from exc
    if not host or not _HOST_RE.match(host) or ("." not in host and host != "localhost"):
        raise MalformedUrl(f"{raw!r} has no usable host")
    if host.startswith("www."):
        host = host[4:]
    if port is not None and port not in (80, 443):
        host = f"{host}:{port}"

    path = parts.path.rstrip("/")
    pairs = [
        (k, v)
        for k, v in parse_qsl(parts.query, keep_blank_values=True)
        if not k.startswith("utm_") and k not in TRACKING_PARAMS
    ]
    query = urlencode(sorted(pairs))
    return host + path + (f"?{query}" if query else "")


def evidence_item(
    url: str,
    title: str,
    snippet: str,
    source_engine: str,
    **kwargs,
) -> EvidenceItem:
    """Build an EvidenceItem with its normalized URL computed."""
    return EvidenceItem(
        url=url,
        normalized_url=normalize_url(url),
        title=title,
        snippet=snippet,
        source_engine=source_engine,
        **kwargs,
    )


# ---------------------------------------------------------------------------
# search backends

class _RateLimiter:
    def __init__(self, rate_per_sec: float | None):
        self._interval = 1.0 / rate_per_sec if rate_per_sec else 0.0
        self._lock = threading.Lock()
        self._next_at = 0.0

    def acquire(self):
        if not self._interval:
            return
        with self._lock:
            now = time.monotonic()
            wait = self._next_at - now
            self._next_at = max(now, self._next_at) + self._interval
        if wait > 0:
            time.sleep(wait)


_STUB_FILLERS = (
    "Official statistics published by the national bureau provide detailed figures on this topic.",
    "Independent reviewers examined the primary sources and archived the relevant documents.",
    "The encyclopedia entry covers the historical background and cites peer-reviewed research.",
    "A panel of subject-matter experts discussed the measurements and their margins of error.",
    "Recent coverage compares the reported numbers against earlier government releases.",
    "The database aggregates previous fact-checks and links to the original reporting.",
    "Survey data collected over the past decade gives additional context for the figures.",
    "An annotated bibliography lists the key studies that address this exact question.",
)


class StubSearchBackend:
    """Deterministic synthetic results: three hits per query, keyed by a
    stable hash of (engine, query, rank)."""

    def __init__(self, connector: SearchConnector):
        self.connector = connector
        self.calls = 0
        self._lock = threading.Lock()

    def search(self, query: str, max_results: int) -> list[dict]:
        with self._lock:
            self.calls += 1
        engine = self.connector.engine_id
        results = []
        for rank in range(1, min(3, max_results) + 1):
            digest = hashlib.sha1(f"{engine}|{query}|{rank}".encode("utf-8")).hexdigest()
            filler = _STUB_FILLERS[int(digest[:8], 16) % len(_STUB_FILLERS)]
            results.append(
                {
                    "title": f"{engine} #{rank}: {query[:60]}",
                    "url": f"https://{engine}.example.org/{digest[:10]}",
                    "snippet": f"Result {rank} from {engine}: {query} {filler}",
                    "rank": rank,
                }
            )
        return results

    def health(self) -> str:
        return "ok"


class HttpSearchBackend:
    def __init__(self, connector: SearchConnector):
        self.connector = connector
        self.calls = 0
        self._lock = threading.Lock()
        self._client = httpx.Client(timeout=connector.timeout)

    def _headers(self) -> dict[str, str]:
        if not self.connector.api_key_env:
            return {}
        key = os.environ.get(self.connector.api_key_env, "")
        return {"Authorization": f"Bearer {key}"} if key else {}

    def search(self, query: str, max_results: int) -> list[dict]:
        with self._lock:
            self.calls += 1
        try:
            resp = self._client.post(
                self.connector.endpoint,
                json={"query": query, "max_results": max_results},
                headers=self._headers(),
            )
            resp.raise_for_status()
            body = resp.json()
        except httpx.HTTPError as exc:
            raise ProviderUnavailable(f"search {self.connector.engine_id}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ProviderMalformedResponse(
                f"search {self.connector.engine_id}: non-JSON body"
            ) from exc
        results = body.get("results") if isinstance(body, dict) else None
        if not isinstance(results, list):
            raise ProviderMalformedResponse(
                f"search {self.connector.engine_id}: missing 'results'"
            )
        out = []
        for pos, r in enumerate(results, start=1):
            if not isinstance(r, dict) or "url" not in r:
                continue
            out.append(
                {
                    "title": str(r.get("title", "")),
                    "url": str(r["url"]),
                    "snippet": str(r.get("snippet", "")),
                    "rank": int(r.get("rank", pos)),
                }
            )
        return out

    def health(self) -> str:
        try:
            self._client.get(self.connector.endpoint, timeout=2.0)
            return "ok"
        except httpx.HTTPError:
            return "unreachable"


def resolve_connector(connector: SearchConnector):
    if connector.endpoint == LOCAL_STUB:
        return StubSearchBackend(connector)
    return HttpSearchBackend(connector)


def _as_search_backend(connector):
    if isinstance(connector, SearchConnector):
        return resolve_connector(connector)
    return connector


def canonical_order_key(item: EvidenceItem):
    """Sort key reproducing the deterministic search_all ordering:
    (engine, question index, connector rank), with content tie-breakers."""
    return (
        item.source_engine,
        item.question_index if item.question_index is not None else _UNRANKED,
        item.rank if item.rank is not None else _UNRANKED,
        item.normalized_url,
        item.title,
        item.snippet,
    )


def search_all(
    questions: QuestionSet,
    connectors: Sequence,
    *,
    concurrency: int = 8,
) -> list[EvidenceItem]:
    """Fan each question out to every connector and merge the results.

    Per-connector failures are logged and skipped so partial results survive;
    AllConnectorsFailed is raised only when every (connector, question) call
    errored. Output order is (engine_id, question index, connector rank)
    regardless of completion order.
    """
    backends = [_as_search_backend(c) for c in connectors]
    if not backends:
        raise ValueError("search_all requires at least one connector")
    limiters = {id(b): _RateLimiter(b.connector.rate_per_sec) for b in backends}
    tasks = [(b, qi, q) for b in backends for qi, q in enumerate(questions.questions)]

    def run(task):
        backend, _, query = task
        limiters[id(backend)].acquire()
        return backend.search(query, backend.connector.max_results)

    items: list[EvidenceItem] = []
    failures = 0
    with ThreadPoolExecutor(max_workers=max(1, min(concurrency, len(tasks)))) as pool:
        for (backend, qi, _), outcome in zip(
            tasks, pool.map(lambda t: _guard(run, t), tasks)
        ):
            if isinstance(outcome, Exception):
                failures += 1
                logger.warning(
                    "connector %s failed for question %d: %s",
                    backend.connector.engine_id, qi, outcome,
                )
                continue
            for r in outcome:
                try:
                    items.append(
                        evidence_item(
                            url=r["url"],
                            title=r["title"],
                            snippet=r["snippet"],
                            source_engine=backend.connector.engine_id,
                            question_index=qi,
                            rank=r["rank"],
                        )
                    )
                except MalformedUrl:
                    logger.warning("dropping result with malformed url %r", r["url"])
    if failures == len(tasks):
        raise AllConnectorsFailed(
            f"all {len(backends)} connectors failed for all {len(questions.questions)} questions"
        )
    items.sort(key=canonical_order_key)
    return items


def _guard(fn, arg):
    try:
        return fn(arg)
    except Exception as exc:  # noqa: BLE001 - partial failure is the contract
        return exc


# ---------------------------------------------------------------------------
# embeddings

class LocalStubEmbedder:
    """Bag-of-character-3-grams hashed into a fixed-size vector, L2-normalized.

    Gives real cosine geometry (identical texts -> 1.0, disjoint -> ~0.0)
    without any model download.
    """

    is_stub = True

    def __init__(self, dimension: int = 64):
        self.dimension = dimension
        self.calls = 0

    def embed(self, texts: Sequence[str]) -> np.ndarray:
        self.calls += 1
        vecs = np.zeros((len(texts), self.dimension), dtype=np.float64)
        for i, text in enumerate(texts):
            s = text.casefold()
            for j in range(len(s) - 2):
                gram = s[j : j + 3]
                h = hashlib.blake2b(gram.encode("utf-8"), digest_size=8).digest()
                vecs[i, int.from_bytes(h, "big") % self.dimension] += 1.0
        norms = np.linalg.norm(vecs, axis=1, keepdims=True)
        np.divide(vecs, norms, out=vecs, where=norms > 0)
        return vecs

    def health(self) -> str:
        return "ok"


class HttpEmbedder:
    """Remote encoder: POST {"texts": [...]} -> {"embeddings": [[...], ...]}."""

    is_stub = False

    def __init__(self, provider: EmbeddingProvider):
        self.provider = provider
        self.dimension = provider.dimension
        self.calls = 0
        self._client = httpx.Client(timeout=provider.timeout)

    def embed(self, texts: Sequence[str]) -> np.ndarray:
        self.calls += 1
        try:
            resp = self._client.post(self.provider.endpoint, json={"texts": list(texts)})
            resp.raise_for_status()
            body = resp.json()
        except httpx.HTTPError as exc:
            raise ProviderUnavailable(f"embedder: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ProviderMalformedResponse("embedder returned non-JSON body") from exc
        embeddings = body.get("embeddings") if isinstance(body, dict) else None
        if not isinstance(embeddings, list) or len(embeddings) != len(texts):
            raise ProviderMalformedResponse("embedder response shape mismatch")
        arr = np.asarray(embeddings, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != self.dimension:
            raise ProviderMalformedResponse(
                f"embedder returned dimension {arr.shape}, expected {self.dimension}"
            )
        return arr

    def health(self) -> str:
        try:
            self._client.get(self.provider.endpoint, timeout=2.0)
            return "ok"
        except httpx.HTTPError:
            return "unreachable"


def resolve_embedder(provider: EmbeddingProvider):
    if provider.is_stub:
        return LocalStubEmbedder(provider.dimension)
    return HttpEmbedder(provider)


def _as_embedder(provider):
    if isinstance(provider, EmbeddingProvider):
        return resolve_embedder(provider)
    return provider


def cosine_similarity(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine in [-1, 1]; zero vectors compare as 0.0."""
    na, nb = float(np.linalg.norm(a)), float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))


def char_trigrams(text: str) -> frozenset[str]:
    s = text.casefold()
    return frozenset(s[i : i + 3] for i in range(len(s) - 2))


def trigram_jaccard(a: str, b: str) -> float:
    ga, gb = char_trigrams(a), char_trigrams(b)
    union = ga | gb
    if not union:
        return 0.0
    return len(ga & gb) / len(union)


# ---------------------------------------------------------------------------
# dedup / filter / selection

def deduplicate(
    items: Sequence[EvidenceItem],
    embedder,
    *,
    cosine_threshold: float = DEDUP_COSINE_THRESHOLD,
    jaccard_threshold: float = DEDUP_JACCARD_THRESHOLD,
) -> list[EvidenceItem]:
    """Drop near-duplicates, keeping the first item of each group in
    canonical search order.

    Two items are duplicates when their normalized URLs match, their
    casefolded trimmed titles match, or their snippets are approximately
    equal: cosine >= ``cosine_threshold`` with a real embedder, character
    3-gram Jaccard >= ``jaccard_threshold`` with the local stub (also the
    fallback when the embedder fails).
    """
    if not items:
        return []
    backend = _as_embedder(embedder)
    ordered = sorted(items, key=canonical_order_key)

    vectors = None
    if not getattr(backend, "is_stub", False):
        try:
            vectors = backend.embed([it.snippet for it in ordered])
        except Exception as exc:  # noqa: BLE001 - fall back, never hard-fail
            logger.warning("embedder failed during dedup, using 3-gram Jaccard: %s", exc)

    grams = [char_trigrams(it.snippet) for it in ordered] if vectors is None else None

    def snippets_similar(i: int, j: int) -> bool:
        if vectors is not None:
            return cosine_similarity(vectors[i], vectors[j]) >= cosine_threshold
        union = grams[i] | grams[j]
        if not union:
            return False
        return len(grams[i] & grams[j]) / len(union) >= jaccard_threshold

    kept: list[int] = []
    for i, item in enumerate(ordered):
        title_key = item.title.strip().casefold()
        duplicate = False
        for k in kept:
            other = ordered[k]
            if (
                item.normalized_url == other.normalized_url
                or title_key == other.title.strip().casefold()
                or snippets_similar(i, k)
            ):
                duplicate = True
                break
        if not duplicate:
            kept.append(i)
    return [ordered[k] for k in kept]


def filter_blocklist(items: Sequence[EvidenceItem], blocklist: Blocklist) -> list[EvidenceItem]:
    """Remove items whose host (or any parent domain) is blocklisted."""
    out = []
    for item in items:
        host = item.normalized_url.split("/", 1)[0].split("?", 1)[0].rsplit(":", 1)[0]
        if not blocklist.blocks_host(host):
            out.append(item)
    return out


def split_paragraphs(snippet: str, min_chars: int = MIN_PARAGRAPH_CHARS) -> list[str]:
    """Blank-line-delimited paragraphs of at least ``min_chars`` characters."""
    return [p.strip() for p in _PARAGRAPH_SPLIT.split(snippet) if len(p.strip()) >= min_chars]


def select_top_snippets(
    claim: Claim,
    items: Sequence[EvidenceItem],
    embedder,
    k: int = 3,
    *,
    min_paragraph_chars: int = MIN_PARAGRAPH_CHARS,
) -> list[EvidenceItem]:
    """Keep the <= k items most similar to the claim, each rewritten to its
    best paragraph with ``similarity`` set, sorted by similarity descending
    (ties keep the deterministic search order)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if not items:
        return []
    backend = _as_embedder(embedder)

    paragraphs_per_item = [split_paragraphs(it.snippet, min_paragraph_chars) for it in items]
    texts = [claim.text]
    for paragraphs in paragraphs_per_item:
        texts.extend(paragraphs)

    try:
        vectors = backend.embed(texts)
    except Exception as exc:  # noqa: BLE001
        logger.warning("embedder failed during selection, using local stub: %s", exc)
        try:
            vectors = LocalStubEmbedder().embed(texts)
        except Exception as inner:  # pragma: no cover - defensive
            raise EmbedderUnavailable(str(inner)) from inner

    claim_vec = vectors[0]
    scored: list[EvidenceItem] = []
    offset = 1
    for item, paragraphs in zip(items, paragraphs_per_item):
        best_text, best_sim = None, -2.0
        for paragraph, vec in zip(paragraphs, vectors[offset : offset + len(paragraphs)]):
            sim = cosine_similarity(claim_vec, vec)
            if sim > best_sim:
                best_text, best_sim = paragraph, sim
        offset += len(paragraphs)
        if best_text is None:
            continue  # nothing above the paragraph minimum
        similarity = min(1.0, max(0.0, best_sim))
        scored.append(replace(item, snippet=best_text, similarity=similarity))

    scored.sort(key=lambda it: -it.similarity)
    return scored[:k]
