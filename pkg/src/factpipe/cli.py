"""Command-line entry points: `factpipe serve` and `factpipe eval`."""

from __future__ import annotations

import argparse
import sys

from .config import default_config, load_config
from .evalkit import (
    NAMED_PREDICTORS,
    EvalTask,
    build_predictor,
    evaluate,
    emit_report,
    load_dataset,
)
from .exceptions import ConfigError, FactPipeError

EXIT_CONFIG_ERROR = 2

_TASK_NAMES = {
    "claim-detection": EvalTask.CLAIM_DETECTION,
    "veracity": EvalTask.VERACITY,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="factpipe", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the fact-checking REST service")
    serve.add_argument("--config", help="path to a YAML config file (default: all stubs)")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")

    ev = sub.add_parser("eval", help="run the evaluation harness")
    ev.add_argument("--task", choices=sorted(_TASK_NAMES), required=True)
    ev.add_argument("--data", required=True, help="JSON-lines dataset path")
    ev.add_argument("--provider", choices=NAMED_PREDICTORS, default="heuristic-stub")
    ev.add_argument("--runs", type=int, default=1)
    ev.add_argument("--out", required=True, help="output report path")
    ev.add_argument("--format", choices=["json", "csv", "markdown-table"], default="csv")
    ev.add_argument("--split", choices=["train", "dev", "test"], default=None,
                    help="restrict to one split (default: all rows)")
    ev.add_argument("--seed", type=int, default=7, help="seed for stochastic providers")
    ev.add_argument("--uncertain-as-wrong", action="store_true",
                    help="score uncertain predictions as wrong instead of dropping them")
    return parser


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    try:
        config = load_config(args.config) if args.config else default_config()
        app = create_app(config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    task = _TASK_NAMES[args.task]
    try:
        records = load_dataset(args.data, task)
        if args.split:
            records = [r for r in records if r.split.value == args.split]
        predictor = build_predictor(args.provider, records, seed=args.seed)
        report = evaluate(
            records,
            predictor,
            task,
            n_runs=args.runs,
            uncertain_as_wrong=args.uncertain_as_wrong,
        )
        out = emit_report(report, args.format, args.out)
    except (FactPipeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(
        f"{task.value}: overall macro-F1 {report.overall_macro_f1:.4f}, "
        f"micro-F1 {report.overall_micro_f1:.4f} over "
        f"{len(report.per_language)} language(s), {args.runs} run(s) -> {out}"
    )
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        return cmd_serve(args)
    return cmd_eval(args)


if __name__ == "__main__":
    sys.exit(main())
