"""Binary entailment fine-tuning from an exported pair file.

The input is the line-delimited JSON pair format (fields premise,
hypothesis, gold in {"entail", "non_entail"}; other fields are ignored).
The output directory is a self-contained checkpoint loadable by
EntailmentModel, with the binary label map baked in.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import torch
from transformers import AutoModelForSequenceClassification, AutoTokenizer

ID2LABEL = {0: "non_entailment", 1: "entailment"}
LABEL2ID = {"non_entailment": 0, "entailment": 1}
GOLD_TO_ID = {"entail": 1, "non_entail": 0}


class PairFileError(ValueError):
    """The pair file is malformed or too small to train on."""


@dataclass
class FinetuneConfig:
    epochs: int = 1
    batch_size: int = 8
    learning_rate: float = 5e-4
    seed: int = 0
    max_length: int = 64
    min_examples: int = 10
    device: str = "cpu"


def load_pairs(path: str | Path) -> list[tuple[str, str, int]]:
    pairs: list[tuple[str, str, int]] = []
    with open(path, "r", encoding="utf-8") as fp:
        for lineno, line in enumerate(fp, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise PairFileError(f"{path}: line {lineno}: invalid JSON: {exc}") from exc
            for field in ("premise", "hypothesis", "gold"):
                if field not in row:
                    raise PairFileError(f"{path}: line {lineno}: missing field {field!r}")
            gold = row["gold"]
            if gold not in GOLD_TO_ID:
                raise PairFileError(
                    f"{path}: line {lineno}: gold must be 'entail' or 'non_entail', "
                    f"got {gold!r}"
                )
            pairs.append((str(row["premise"]), str(row["hypothesis"]), GOLD_TO_ID[gold]))
    return pairs


def fine_tune(
    pairs_path: str | Path,
    base_model: str,
    out_dir: str | Path,
    config: FinetuneConfig | None = None,
) -> str:
    """Train a binary entailment classifier; returns the artifact path."""
    config = config or FinetuneConfig()
    pairs = load_pairs(pairs_path)
    if len(pairs) < config.min_examples:
        raise PairFileError(
            f"{pairs_path}: {len(pairs)} examples is below the minimum "
            f"{config.min_examples}"
        )
    torch.manual_seed(config.seed)
    tokenizer = AutoTokenizer.from_pretrained(base_model)
    model = AutoModelForSequenceClassification.from_pretrained(
        base_model,
        num_labels=2,
        id2label=ID2LABEL,
        label2id=LABEL2ID,
        ignore_mismatched_sizes=True,
    )
    device = torch.device(config.device)
    model.to(device)

    enc = tokenizer(
        [p for p, _, _ in pairs],
        [h for _, h, _ in pairs],
        padding=True,
        truncation=True,
        max_length=config.max_length,
        return_tensors="pt",
    )
    labels = torch.tensor([y for _, _, y in pairs])
    optimizer = torch.optim.AdamW(model.parameters(), lr=config.learning_rate)
    shuffler = torch.Generator().manual_seed(config.seed)

    model.train()
    for _ in range(config.epochs):
        order = torch.randperm(len(labels), generator=shuffler)
        for start in range(0, len(labels), config.batch_size):
            idx = order[start : start + config.batch_size]
            batch = {key: tensor[idx].to(device) for key, tensor in enc.items()}
            out = model(**batch, labels=labels[idx].to(device))
            out.loss.backward()
            optimizer.step()
            optimizer.zero_grad()
    model.eval()

    out_path = Path(out_dir)
    out_path.mkdir(parents=True, exist_ok=True)
    model.save_pretrained(out_path)
    tokenizer.save_pretrained(out_path)
    return str(out_path)
