"""Pipeline configuration: provider descriptors, thresholds, concurrency caps.

Config files are YAML. Secrets never live in the file; connectors name the
environment variable that holds their API key. ``load_config`` fails fast on
anything unresolvable so ``serve`` can exit before binding a port.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any

import yaml

from .claim_detect import ClassifierKind, ClassifierProvider
from .evidence import EmbeddingProvider, SearchConnector
from .exceptions import ConfigError
from .llm import LOCAL_STUB, LlmProvider, TemplateRegistry
from .verdict import NliKind, NliProvider


@dataclass(frozen=True)
class PipelineConfig:
    classifier: ClassifierProvider = field(default_factory=ClassifierProvider)
    nli: NliProvider = field(default_factory=NliProvider)
    llm: LlmProvider = field(default_factory=lambda: LlmProvider(name="stub-llm", endpoint=LOCAL_STUB))
    embedder: EmbeddingProvider = field(default_factory=EmbeddingProvider)
    connectors: tuple[SearchConnector, ...] = (
        SearchConnector(engine_id="web-a"),
        SearchConnector(engine_id="web-b"),
    )
    blocklist_path: str | None = None
    template_dirs: tuple[str, ...] = ()
    abbreviation_files: dict[str, str] = field(default_factory=dict)
    min_sentence_chars: int = 3
    max_document_chars: int = 50_000
    detection_batch_size: int = 32
    top_k_snippets: int = 3
    dedup_cosine_threshold: float = 0.90
    dedup_jaccard_threshold: float = 0.80
    min_paragraph_chars: int = 40
    search_concurrency: int = 8
    claim_concurrency: int = 4
    cache_ttl_seconds: float = 3600.0

    def __post_init__(self):
        if self.cache_ttl_seconds < 0:
            raise ConfigError("cache_ttl_seconds must be >= 0")
        if self.max_document_chars < 1:
            raise ConfigError("max_document_chars must be >= 1")
        for name in ("top_k_snippets", "search_concurrency", "claim_concurrency",
                     "min_sentence_chars", "detection_batch_size"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1")
        ids = [c.engine_id for c in self.connectors]
        if len(ids) != len(set(ids)):
            raise ConfigError("connector engine_id values must be unique")


def default_config() -> PipelineConfig:
    """All-stub configuration: runs offline and deterministically."""
    return PipelineConfig()


_PROVIDER_KEYS = {"classifier", "nli", "llm", "embedder", "connectors"}


def config_from_dict(data: dict[str, Any]) -> PipelineConfig:
    if not isinstance(data, dict):
        raise ConfigError("config root must be a mapping")
    known = {f.name for f in fields(PipelineConfig)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    kwargs: dict[str, Any] = {k: v for k, v in data.items() if k not in _PROVIDER_KEYS}
    if "template_dirs" in kwargs:
        kwargs["template_dirs"] = tuple(kwargs["template_dirs"])
    try:
        if "classifier" in data:
            d = dict(data["classifier"])
            if "kind" in d:
                d["kind"] = ClassifierKind(d["kind"])
            kwargs["classifier"] = ClassifierProvider(**d)
        if "nli" in data:
            d = dict(data["nli"])
            if "kind" in d:
                d["kind"] = NliKind(d["kind"])
            kwargs["nli"] = NliProvider(**d)
        if "llm" in data:
            kwargs["llm"] = LlmProvider(**data["llm"])
        if "embedder" in data:
            kwargs["embedder"] = EmbeddingProvider(**data["embedder"])
        if "connectors" in data:
            kwargs["connectors"] = tuple(SearchConnector(**c) for c in data["connectors"])
        return PipelineConfig(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def validate_config(config: PipelineConfig) -> None:
    """Startup checks: referenced files, templates, and env vars must resolve."""
    templates = TemplateRegistry(config.template_dirs)
    for template_id in (
        config.classifier.prompt_template_id,
        config.nli.prompt_template_id,
    ):
        if template_id:
            templates.get(template_id)  # raises ConfigError when unknown
    if config.blocklist_path and not Path(config.blocklist_path).is_file():
        raise ConfigError(f"blocklist file not found: {config.blocklist_path}")
    for lang, path in config.abbreviation_files.items():
        if not Path(path).is_file():
            raise ConfigError(f"abbreviation file for {lang!r} not found: {path}")
    for connector in config.connectors:
        if connector.endpoint != LOCAL_STUB and connector.api_key_env:
            if connector.api_key_env not in os.environ:
                raise ConfigError(
                    f"connector {connector.engine_id!r} needs env var "
                    f"{connector.api_key_env} which is not set"
                )


def load_config(path: str | Path) -> PipelineConfig:
    """Read, parse, and validate a YAML config file."""
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    try:
        data = yaml.safe_load(raw) or {}
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML: {exc}") from exc
    config = config_from_dict(data)
    validate_config(config)
    return config
