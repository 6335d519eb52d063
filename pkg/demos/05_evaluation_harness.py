"""The evaluation harness: bundled fixtures, named baseline providers,
multi-run averaging, and report rendering.

Run:  python3 demos/05_evaluation_harness.py
"""

from collections import Counter

from factpipe.evalkit import (
    EvalTask,
    Split,
    build_predictor,
    bundled_fixture,
    evaluate,
    load_dataset,
    render_report,
)

records = load_dataset(bundled_fixture(EvalTask.CLAIM_DETECTION), EvalTask.CLAIM_DETECTION)
test = [r for r in records if r.split is Split.TEST]
print("claim-detection test split:", dict(Counter(r.gold for r in test)))

for name in ("majority", "heuristic-stub", "oracle"):
    predictor = build_predictor(name, test)
    report = evaluate(test, predictor, EvalTask.CLAIM_DETECTION)
    scores = report.per_language["en"]
    print(f"  {name:15s} macro-F1 {scores.macro_f1:.4f}   micro-F1 {scores.micro_f1:.4f}")

# A seeded stochastic provider: three runs, the reported score is the mean.
veracity = load_dataset(bundled_fixture(EvalTask.VERACITY), EvalTask.VERACITY)
noisy = build_predictor("noisy-oracle", veracity, seed=11)
report = evaluate(veracity, noisy, EvalTask.VERACITY, n_runs=3)
scores = report.per_language["en"]
print("\nnoisy-oracle on veracity, 3 runs:")
for i, run in enumerate(scores.per_run_scores):
    print(f"  run {i}: macro {run['macro_f1']:.4f}  micro {run['micro_f1']:.4f}")
print(f"  mean : macro {scores.macro_f1:.4f}  micro {scores.micro_f1:.4f}")

print("\nmarkdown report:\n")
print(render_report(report, "markdown-table"))
