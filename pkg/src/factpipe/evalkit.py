"""Dataset loading, Macro/Micro-F1 computation, and per-language multi-run
evaluation with report emission.

Conventions that change scores and are therefore spelled out:
- per-class F1 with zero TP and zero FP/FN is defined as 0 (absent-class
  convention);
- macro-F1 averages over all classes present in gold or predictions;
- micro-F1 pools TP/FP/FN globally, which equals accuracy for single-label
  tasks;
- "uncertain" predictions are dropped from a run's counts by default
  (mirroring the exclusion of undecidable claims); pass
  ``uncertain_as_wrong=True`` to score them as an always-wrong class instead.
"""

from __future__ import annotations

import csv
import io
import json
import random
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Sequence

from .exceptions import DuplicateId, EmptyInput, LengthMismatch, SchemaError
from .heuristics import heuristic_checkworthiness_score
from .model import LanguageTag, parse_language_tag

UNCERTAIN = "uncertain"


class EvalTask(str, Enum):
    CLAIM_DETECTION = "claim_detection"
    VERACITY = "veracity"


class Split(str, Enum):
    TRAIN = "train"
    DEV = "dev"
    TEST = "test"


TASK_LABELS = {
    EvalTask.CLAIM_DETECTION: ("check_worthy", "not_check_worthy"),
    EvalTask.VERACITY: ("true", "false"),
}


@dataclass(frozen=True)
class EvalRecord:
    id: str
    text: str
    language: LanguageTag
    task: EvalTask
    gold: str
    split: Split


Predictor = Callable[[EvalRecord, int], str]


def load_dataset(path: str | Path, task: EvalTask) -> list[EvalRecord]:
    """Parse a JSON-lines dataset {id, text, language, label, split}.

    Raises SchemaError with the offending line number, and DuplicateId when
    an id repeats within (task, language, split).
    """
    valid_labels = set(TASK_LABELS[task])
    records: list[EvalRecord] = []
    seen: set[tuple] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"invalid JSON: {exc.msg}", line=lineno) from exc
            if not isinstance(row, dict):
                raise SchemaError("row is not an object", line=lineno)
            missing = {"id", "text", "language", "label", "split"} - row.keys()
            if missing:
                raise SchemaError(f"missing fields {sorted(missing)}", line=lineno)
            label = str(row["label"]).lower()
            if label not in valid_labels:
                raise SchemaError(
                    f"label {row['label']!r} invalid for task {task.value}", line=lineno
                )
            try:
                language = parse_language_tag(str(row["language"]))
                split = Split(str(row["split"]).lower())
            except Exception as exc:
                raise SchemaError(str(exc), line=lineno) from exc
            if not str(row["text"]).strip():
                raise SchemaError("empty text", line=lineno)
            record = EvalRecord(
                id=str(row["id"]),
                text=str(row["text"]),
                language=language,
                task=task,
                gold=label,
                split=split,
            )
            key = (task, language.code, split, record.id)
            if key in seen:
                raise DuplicateId(f"duplicate id {record.id!r} in {key[1:3]}")
            seen.add(key)
            records.append(record)
    return records


def bundled_fixture(task: EvalTask) -> Path:
    """Path to the bundled synthetic dataset for ``task``."""
    name = "claim_detection.jsonl" if task is EvalTask.CLAIM_DETECTION else "veracity.jsonl"
    return Path(str(resources.files("factpipe").joinpath(f"data/fixtures/{name}")))


# ---------------------------------------------------------------------------
# metrics

@dataclass(frozen=True)
class ConfusionCounts:
    """Per-class TP/FP/FN over a label pair list; TN only defined for binary."""

    classes: tuple[str, ...]
    tp: dict[str, int]
    fp: dict[str, int]
    fn: dict[str, int]
    total: int

    @classmethod
    def from_labels(cls, gold: Sequence[str], pred: Sequence[str]) -> "ConfusionCounts":
        classes = tuple(sorted(set(gold) | set(pred)))
        tp = {c: 0 for c in classes}
        fp = {c: 0 for c in classes}
        fn = {c: 0 for c in classes}
        for g, p in zip(gold, pred):
            if g == p:
                tp[g] += 1
            else:
                fp[p] += 1
                fn[g] += 1
        return cls(classes=classes, tp=tp, fp=fp, fn=fn, total=len(gold))

    def tn(self, cls_label: str) -> int:
        return self.total - self.tp[cls_label] - self.fp[cls_label] - self.fn[cls_label]


def _f1(tp: int, fp: int, fn: int) -> float:
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    if precision + recall == 0.0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def f1_scores(gold: Sequence[str], pred: Sequence[str]) -> dict[str, Any]:
    """Per-class, macro, and micro F1 for one run.

    Macro averages per-class F1 over every class present in gold or pred;
    micro is F1 over globally pooled TP/FP/FN.
    """
    if len(gold) != len(pred):
        raise LengthMismatch(f"{len(gold)} gold labels vs {len(pred)} predictions")
    if not gold:
        raise EmptyInput("no labels to score")
    counts = ConfusionCounts.from_labels(gold, pred)
    per_class = {c: _f1(counts.tp[c], counts.fp[c], counts.fn[c]) for c in counts.classes}
    macro = sum(per_class.values()) / len(per_class)
    micro = _f1(
        sum(counts.tp.values()), sum(counts.fp.values()), sum(counts.fn.values())
    )
    return {"per_class_f1": per_class, "macro_f1": macro, "micro_f1": micro}


# ---------------------------------------------------------------------------
# evaluation harness

@dataclass(frozen=True)
class LanguageScores:
    macro_f1: float
    micro_f1: float
    n_runs: int
    per_run_scores: tuple[dict[str, float], ...]


@dataclass(frozen=True)
class EvalReport:
    task: EvalTask
    per_language: dict[str, LanguageScores] = field(default_factory=dict)
    overall_macro_f1: float = 0.0
    overall_micro_f1: float = 0.0
    n_runs: int = 1

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "task": self.task.value,
            "per_language": {
                lang: {
                    "macro_f1": s.macro_f1,
                    "micro_f1": s.micro_f1,
                    "n_runs": s.n_runs,
                    "per_run_scores": list(s.per_run_scores),
                }
                for lang, s in self.per_language.items()
            },
            "overall_macro_f1": self.overall_macro_f1,
            "overall_micro_f1": self.overall_micro_f1,
            "n_runs": self.n_runs,
        }

    @classmethod
    def from_json_dict(cls, d: dict[str, Any]) -> "EvalReport":
        per_language = {
            lang: LanguageScores(
                macro_f1=s["macro_f1"],
                micro_f1=s["micro_f1"],
                n_runs=s["n_runs"],
                per_run_scores=tuple(s["per_run_scores"]),
            )
            for lang, s in d["per_language"].items()
        }
        return cls(
            task=EvalTask(d["task"]),
            per_language=per_language,
            overall_macro_f1=d["overall_macro_f1"],
            overall_micro_f1=d["overall_micro_f1"],
            n_runs=d["n_runs"],
        )


def evaluate(
    records: Sequence[EvalRecord],
    predictor: Predictor,
    task: EvalTask,
    n_runs: int = 1,
    *,
    uncertain_as_wrong: bool = False,
) -> EvalReport:
    """Run the predictor over the records, grouped by language.

    Each language is scored ``n_runs`` times and the reported score is the
    arithmetic mean over runs. Predictor exceptions are recorded as
    ``uncertain`` for that record.
    """
    if not records:
        raise EmptyInput("no records to evaluate")
    if n_runs < 1:
        raise ValueError("n_runs must be >= 1")

    by_language: dict[str, list[EvalRecord]] = {}
    for r in records:
        by_language.setdefault(r.language.code, []).append(r)

    per_language: dict[str, LanguageScores] = {}
    for lang in sorted(by_language):
        lang_records = by_language[lang]
        run_scores = []
        for run in range(n_runs):
            gold, pred = [], []
            for record in lang_records:
                try:
                    label = predictor(record, run)
                except Exception:  # noqa: BLE001 - provider errors -> uncertain
                    label = UNCERTAIN
                if label == UNCERTAIN and not uncertain_as_wrong:
                    continue
                gold.append(record.gold)
                pred.append(label)
            if gold:
                scores = f1_scores(gold, pred)
                run_scores.append(
                    {"macro_f1": scores["macro_f1"], "micro_f1": scores["micro_f1"]}
                )
            else:
                run_scores.append({"macro_f1": 0.0, "micro_f1": 0.0})
        per_language[lang] = LanguageScores(
            macro_f1=sum(s["macro_f1"] for s in run_scores) / n_runs,
            micro_f1=sum(s["micro_f1"] for s in run_scores) / n_runs,
            n_runs=n_runs,
            per_run_scores=tuple(run_scores),
        )

    overall_macro = sum(s.macro_f1 for s in per_language.values()) / len(per_language)
    overall_micro = sum(s.micro_f1 for s in per_language.values()) / len(per_language)
    return EvalReport(
        task=task,
        per_language=per_language,
        overall_macro_f1=overall_macro,
        overall_micro_f1=overall_micro,
        n_runs=n_runs,
    )


# ---------------------------------------------------------------------------
# report emission

def _sorted_rows(report: EvalReport) -> list[tuple[str, LanguageScores]]:
    # Sorted by macro-F1 descending like the per-language evaluation figures.
    return sorted(
        report.per_language.items(), key=lambda kv: (-kv[1].macro_f1, kv[0])
    )


def render_report(report: EvalReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_json_dict(), ensure_ascii=False, indent=2, sort_keys=True)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["language", "task", "macro_f1", "micro_f1", "n_runs"])
        for lang, scores in _sorted_rows(report):
            writer.writerow(
                [lang, report.task.value, f"{scores.macro_f1:.6f}", f"{scores.micro_f1:.6f}", scores.n_runs]
            )
        return buf.getvalue()
    if fmt == "markdown-table":
        lines = [
            "| language | task | macro_f1 | micro_f1 | n_runs |",
            "|---|---|---|---|---|",
        ]
        for lang, scores in _sorted_rows(report):
            lines.append(
                f"| {lang} | {report.task.value} | {scores.macro_f1:.4f} "
                f"| {scores.micro_f1:.4f} | {scores.n_runs} |"
            )
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def emit_report(report: EvalReport, fmt: str, path: str | Path) -> Path:
    """Write the report in json / csv / markdown-table form."""
    out = Path(path)
    out.write_text(render_report(report, fmt), encoding="utf-8")
    return out


# ---------------------------------------------------------------------------
# bundled predictors

def oracle_predictor(record: EvalRecord, run: int) -> str:
    return record.gold


def majority_class_predictor(records: Sequence[EvalRecord]) -> Predictor:
    """Always predicts the most frequent gold label (ties: lexicographic)."""
    counts = Counter(r.gold for r in records)
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    majority = ordered[0][0] if ordered else UNCERTAIN

    def predict(record: EvalRecord, run: int) -> str:
        return majority

    return predict


def heuristic_stub_predictor(record: EvalRecord, run: int) -> str:
    """Labels via the deterministic check-worthiness rules; for veracity the
    same score is thresholded onto true/false (a weak but offline baseline)."""
    score = heuristic_checkworthiness_score(record.text)
    if record.task is EvalTask.CLAIM_DETECTION:
        return "check_worthy" if score >= 0.5 else "not_check_worthy"
    return "true" if score >= 0.5 else "false"


def noisy_oracle_predictor(seed: int, flip_rate: float = 0.2) -> Predictor:
    """Seeded stochastic stub: echoes gold but flips a fraction of labels,
    varying with the run index. Used to exercise multi-run averaging."""

    def predict(record: EvalRecord, run: int) -> str:
        rng = random.Random(f"{seed}|{run}|{record.task.value}|{record.id}")
        if rng.random() < flip_rate:
            labels = TASK_LABELS[record.task]
            return labels[0] if record.gold == labels[1] else labels[1]
        return record.gold

    return predict


NAMED_PREDICTORS = ("oracle", "majority", "heuristic-stub", "noisy-oracle")


def build_predictor(name: str, records: Sequence[EvalRecord], seed: int = 7) -> Predictor:
    if name == "oracle":
        return oracle_predictor
    if name == "majority":
        return majority_class_predictor(records)
    if name == "heuristic-stub":
        return heuristic_stub_predictor
    if name == "noisy-oracle":
        return noisy_oracle_predictor(seed)
    raise ValueError(f"unknown predictor {name!r}; expected one of {NAMED_PREDICTORS}")
