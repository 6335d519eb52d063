"""factpipe: a multilingual fact-checking pipeline.

Three stages behind pluggable providers: check-worthy claim detection,
question-decomposed evidence retrieval, and majority-vote veracity
prediction, plus a REST service and an evaluation harness. Every provider
has a deterministic offline stub, so the full pipeline runs reproducibly
without network access.
"""

from .claim_detect import (
    ClassifierKind,
    ClassifierProvider,
    detect,
    detect_batched,
)
from .config import PipelineConfig, default_config, load_config
from .evidence import (
    Blocklist,
    EmbeddingProvider,
    SearchConnector,
    deduplicate,
    filter_blocklist,
    normalize_url,
    search_all,
    select_top_snippets,
)
from .exceptions import FactPipeError
from .llm import LlmProvider, TemplateRegistry
from .model import (
    Claim,
    ClaimLabel,
    EvidenceItem,
    LanguageTag,
    Sentence,
    StanceLabel,
    Verdict,
    VerdictLabel,
    parse_language_tag,
)
from .pipeline import FactCheckReport, Runtime, run_pipeline
from .query_gen import QuestionSet, decompose
from .segmenter import SegmenterConfig, segment
from .verdict import NliKind, NliProvider, aggregate, correct, justify, predict_stances

__version__ = "0.1.0"

__all__ = [
    "Blocklist",
    "Claim",
    "ClaimLabel",
    "ClassifierKind",
    "ClassifierProvider",
    "EmbeddingProvider",
    "EvidenceItem",
    "FactCheckReport",
    "FactPipeError",
    "LanguageTag",
    "LlmProvider",
    "NliKind",
    "NliProvider",
    "PipelineConfig",
    "QuestionSet",
    "Runtime",
    "SearchConnector",
    "SegmenterConfig",
    "Sentence",
    "StanceLabel",
    "TemplateRegistry",
    "Verdict",
    "VerdictLabel",
    "aggregate",
    "correct",
    "decompose",
    "deduplicate",
    "default_config",
    "detect",
    "detect_batched",
    "filter_blocklist",
    "justify",
    "load_config",
    "normalize_url",
    "parse_language_tag",
    "predict_stances",
    "run_pipeline",
    "search_all",
    "segment",
    "select_top_snippets",
]
