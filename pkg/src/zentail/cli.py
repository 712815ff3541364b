"""Command-line entry point.

Subcommands mirror the pipeline stages (build-splits, gen-hypotheses,
build-pairs, score, predict, evaluate) plus `run` for the whole pipeline.
Every stage reads and writes flat files, so a `run` is byte-identical to
invoking the stages one at a time.

Exit codes: 0 success, 2 configuration error, 3 data error, 4 transport
error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .errors import ConfigError, DataError, TransportError, ZentailError
from .hypotheses import GlossLexicon, hypothesis_set, hypothesis_to_dict
from .jsonio import dumps_canonical, write_jsonl
from .metrics import ACCURACY, accuracy_report, maps_from_instances, maps_from_predictions, weighted_f1
from .pairs import build_eval_pairs, build_train_pairs, read_pairs, write_pairs
from .pipeline import ENDPOINT_ENV_VAR, METRIC_NAMES, RunConfig, export_pairs, run_pipeline
from .policy import PolicyConfig, predict, read_predictions, write_predictions
from .scorers import ScorerContext, build_scorer, score_pairs
from .splits import build_splits, ingest, read_scheme, verify_splits, write_splits
from .types import (
    ScoreTable,
    partition_for,
    read_aspect,
    read_instances,
    read_partition,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_TRANSPORT = 4


def _add_mode(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--mode",
        choices=["word", "definition", "combination"],
        default="word",
        help="hypothesis generation mode",
    )


def _lexicon(args) -> GlossLexicon | None:
    if getattr(args, "glosses", None):
        return GlossLexicon.from_file(args.glosses)
    return None


def _cmd_build_splits(args) -> int:
    scheme = read_scheme(args.scheme)
    result = ingest(args.raw, scheme)
    if result.dropped_multi_label:
        print(f"dropped {result.dropped_multi_label} multi-label instances", file=sys.stderr)
    splits = build_splits(result.instances, scheme, seed=args.seed)
    violations = verify_splits(splits, scheme)
    if violations:
        for v in violations:
            print(f"violation: {v}", file=sys.stderr)
        raise DataError(f"{len(violations)} scheme violations")
    paths = write_splits(splits, args.out)
    for split, path in paths.items():
        print(f"{split}: {len(splits[split])} instances -> {path}")
    return EXIT_OK


def _cmd_gen_hypotheses(args) -> int:
    aspect = read_aspect(args.aspect)
    hyps = hypothesis_set(aspect, args.mode, _lexicon(args))
    rows = (hypothesis_to_dict(h) for h in hyps)
    if args.out:
        write_jsonl(args.out, rows)
    else:
        for row in rows:
            print(dumps_canonical(row))
    return EXIT_OK


def _cmd_build_pairs(args) -> int:
    aspect = read_aspect(args.aspect)
    instances = read_instances(args.instances)
    lexicon = _lexicon(args)
    if args.kind == "train":
        if not args.partition:
            raise ConfigError("building training pairs requires --partition")
        partition = read_partition(args.partition)
        pairs = build_train_pairs(instances, aspect, partition, args.mode, lexicon)
    else:
        pairs = build_eval_pairs(instances, aspect, args.mode, lexicon)
    n = write_pairs(args.out, pairs)
    print(f"wrote {n} pairs -> {args.out}")
    return EXIT_OK


def _cmd_score(args) -> int:
    aspect = read_aspect(args.aspect)
    pairs = read_pairs(args.pairs)
    train = read_instances(args.train) if args.train else None
    ctx = ScorerContext(
        aspect=aspect,
        train_instances=train,
        parallel=args.parallel,
        endpoint_override=os.environ.get(ENDPOINT_ENV_VAR),
    )
    scorer = build_scorer(args.scorer, ctx)
    table = score_pairs(scorer, pairs)
    table.to_file(args.out)
    print(f"wrote {len(table)} scores -> {args.out}")
    return EXIT_OK


def _cmd_predict(args) -> int:
    aspect = read_aspect(args.aspect)
    table = ScoreTable.from_file(args.scores)
    if args.partition:
        partition = read_partition(args.partition)
    else:
        partition = partition_for(aspect, ())
    config = PolicyConfig(alpha=args.alpha, positive_threshold=args.threshold)
    instance_ids = table.instance_ids()
    if args.instances:
        instance_ids = [inst.id for inst in read_instances(args.instances)]
    predictions = predict(table, instance_ids, aspect, partition, config)
    n = write_predictions(args.out, predictions)
    print(f"wrote {n} predictions -> {args.out}")
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    golds = maps_from_instances(read_instances(args.gold))
    preds = maps_from_predictions(read_predictions(args.preds))
    partition = read_partition(args.partition) if args.partition else None
    if args.aspect:
        labels = read_aspect(args.aspect).all_label_names
    else:
        names = sorted({g for gold in golds.values() for g in gold})
        labels = tuple(names)
    if METRIC_NAMES[args.metric] == ACCURACY:
        report = accuracy_report(preds, golds, labels, partition)
    else:
        report = weighted_f1(preds, golds, labels, partition)
    if args.out:
        report.save(args.out, None)
    print(report.to_text(), end="")
    return EXIT_OK


def _cmd_run(args) -> int:
    config = RunConfig.from_file(args.config)
    if args.seed is not None:
        config.seed = args.seed
    if args.alpha is not None:
        config.policy = PolicyConfig(
            alpha=args.alpha, positive_threshold=config.policy.positive_threshold
        )
    if args.mode is not None:
        config.mode = args.mode
    report = run_pipeline(config)
    print(report.to_text(), end="")
    return EXIT_OK


def _cmd_export_pairs(args) -> int:
    config = RunConfig.from_file(args.config)
    path = export_pairs(config, kind=args.kind)
    print(f"wrote pairs -> {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zentail",
        description="Zero-shot text classification via textual entailment.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-splits", help="materialize benchmark splits from raw data")
    p.add_argument("--scheme", required=True)
    p.add_argument("--raw", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_build_splits)

    p = sub.add_parser("gen-hypotheses", help="render label hypotheses")
    p.add_argument("--aspect", required=True)
    _add_mode(p)
    p.add_argument("--glosses")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen_hypotheses)

    p = sub.add_parser("build-pairs", help="convert instances into entailment pairs")
    p.add_argument("--aspect", required=True)
    p.add_argument("--instances", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--kind", choices=["eval", "train"], default="eval")
    p.add_argument("--partition", help="partition file (required for --kind train)")
    _add_mode(p)
    p.add_argument("--glosses")
    p.set_defaults(func=_cmd_build_pairs)

    p = sub.add_parser("score", help="score entailment pairs with a scorer spec")
    p.add_argument("--aspect", required=True)
    p.add_argument("--pairs", required=True)
    p.add_argument("--scorer", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--train", help="training instances for majority statistics")
    p.add_argument("--parallel", type=int, default=1)
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("predict", help="apply the decision policy to scores")
    p.add_argument("--aspect", required=True)
    p.add_argument("--scores", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--partition")
    p.add_argument("--instances", help="instance file fixing prediction order")
    p.add_argument("--alpha", type=float, default=PolicyConfig.alpha)
    p.add_argument("--threshold", type=float, default=PolicyConfig.positive_threshold)
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("evaluate", help="score predictions against gold labels")
    p.add_argument("--preds", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--metric", choices=sorted(METRIC_NAMES), required=True)
    p.add_argument("--partition")
    p.add_argument("--aspect", help="aspect file fixing the label list")
    p.add_argument("--out", help="also write the report as JSON")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("run", help="run the full pipeline from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--mode", choices=["word", "definition", "combination"], default=None)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("export-pairs", help="export entailment pairs from a run config")
    p.add_argument("--config", required=True)
    p.add_argument("--kind", choices=["train", "eval"], default="train")
    p.set_defaults(func=_cmd_export_pairs)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except TransportError as exc:
        print(f"transport error: {exc}", file=sys.stderr)
        return EXIT_TRANSPORT
    except (DataError, ZentailError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
