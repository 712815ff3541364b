"""Command line: serve the scoring endpoint, or fine-tune a checkpoint.

    nli-service serve --config service.json [--model ...] [--port ...]
    nli-service finetune --pairs train_pairs.jsonl --base <model> --out <dir>
"""

from __future__ import annotations

import argparse
import sys

from .config import ServiceConfig
from .finetune import FinetuneConfig, PairFileError, fine_tune
from .model import ModelLoadError


def _cmd_serve(args) -> int:
    import uvicorn

    from .app import create_app

    config = ServiceConfig.load(
        args.config,
        overrides={
            "model": args.model,
            "port": args.port,
            "max_batch_size": args.max_batch_size,
        },
    )
    app = create_app(config)
    uvicorn.run(app, host=args.host, port=config.port, log_level="info")
    return 0


def _cmd_finetune(args) -> int:
    config = FinetuneConfig(
        epochs=args.epochs,
        batch_size=args.batch_size,
        learning_rate=args.learning_rate,
        seed=args.seed,
        min_examples=args.min_examples,
        device=args.device,
    )
    path = fine_tune(args.pairs, args.base, args.out, config)
    print(f"model artifact written to {path}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="nli-service")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="run the scoring endpoint")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--model", help="model identifier override")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int)
    p.add_argument("--max-batch-size", type=int, dest="max_batch_size")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("finetune", help="fine-tune a base model on exported pairs")
    p.add_argument("--pairs", required=True)
    p.add_argument("--base", required=True, help="base model identifier")
    p.add_argument("--out", required=True)
    p.add_argument("--epochs", type=int, default=1)
    p.add_argument("--batch-size", type=int, default=8, dest="batch_size")
    p.add_argument("--learning-rate", type=float, default=5e-4, dest="learning_rate")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--min-examples", type=int, default=10, dest="min_examples")
    p.add_argument("--device", default="cpu")
    p.set_defaults(func=_cmd_finetune)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PairFileError, ModelLoadError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
