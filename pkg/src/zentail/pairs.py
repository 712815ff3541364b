"""Convert classification splits into binary entailment pairs.

Training pairs: each instance contributes one entailing pair per seen gold
label and one non-entailing pair per remaining seen label, in every
requested mode. Unseen labels contribute nothing to training pairs, so no
training file ever mentions an unseen label. Gold labels outside the seen
set are skipped; an instance with no seen gold label at all is rejected.

Evaluation pairs: each instance is paired with every label of the aspect
(plus the none-label) in every applicable mode, with the gold value
assigned by membership of the hypothesis label in the instance's gold set.

Pairs are emitted in deterministic order (instance order, then label
order, then word before definition) so exported files are reproducible
byte-for-byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import DataError
from .hypotheses import GlossLexicon, Hypothesis, hypothesis_set
from .jsonio import read_jsonl, write_jsonl
from .types import AspectSpec, Instance, SeenUnseenPartition, canonical

ENTAIL = "entail"
NON_ENTAIL = "non_entail"


@dataclass(frozen=True)
class EntailmentPair:
    instance_id: str
    premise: str
    hypothesis: Hypothesis
    gold: str

    def __post_init__(self) -> None:
        if self.gold not in (ENTAIL, NON_ENTAIL):
            raise DataError(f"pair gold must be entail or non_entail, got {self.gold!r}")


def _pairs_for_instance(
    inst: Instance, hyps: Sequence[Hypothesis], keep: set[str] | None
) -> list[EntailmentPair]:
    gold_keys = {canonical(g) for g in inst.gold}
    out = []
    for hyp in hyps:
        key = canonical(hyp.label)
        if keep is not None and key not in keep:
            continue
        gold = ENTAIL if key in gold_keys else NON_ENTAIL
        out.append(
            EntailmentPair(
                instance_id=inst.id, premise=inst.text, hypothesis=hyp, gold=gold
            )
        )
    return out


def build_train_pairs(
    instances: Iterable[Instance],
    aspect: AspectSpec,
    partition: SeenUnseenPartition,
    mode: str,
    lexicon: GlossLexicon | None = None,
) -> list[EntailmentPair]:
    """Training pairs restricted to the partition's seen labels."""
    hyps = hypothesis_set(aspect, mode, lexicon)
    seen_keys = {canonical(s) for s in partition.seen}
    pairs: list[EntailmentPair] = []
    for inst in instances:
        if not any(canonical(g) in seen_keys for g in inst.gold):
            raise DataError(
                f"instance {inst.id!r}: gold labels {list(inst.gold)} are all "
                f"unseen; training data must carry at least one seen label"
            )
        pairs.extend(_pairs_for_instance(inst, hyps, keep=seen_keys))
    return pairs


def build_eval_pairs(
    instances: Iterable[Instance],
    aspect: AspectSpec,
    mode: str,
    lexicon: GlossLexicon | None = None,
) -> list[EntailmentPair]:
    """Evaluation pairs over the full label set (none-label included)."""
    hyps = hypothesis_set(aspect, mode, lexicon)
    pairs: list[EntailmentPair] = []
    for inst in instances:
        pairs.extend(_pairs_for_instance(inst, hyps, keep=None))
    return pairs


def pair_to_dict(pair: EntailmentPair) -> dict:
    return {
        "instance_id": pair.instance_id,
        "premise": pair.premise,
        "hypothesis": pair.hypothesis.text,
        "label": pair.hypothesis.label,
        "mode": pair.hypothesis.mode,
        "gold": pair.gold,
    }


def write_pairs(path: str | Path, pairs: Iterable[EntailmentPair]) -> int:
    return write_jsonl(path, (pair_to_dict(p) for p in pairs))


def read_pairs(path: str | Path) -> list[EntailmentPair]:
    pairs = []
    for lineno, row in read_jsonl(path):
        try:
            hyp = Hypothesis(label=row["label"], mode=row["mode"], text=row["hypothesis"])
            pairs.append(
                EntailmentPair(
                    instance_id=row["instance_id"],
                    premise=row["premise"],
                    hypothesis=hyp,
                    gold=row["gold"],
                )
            )
        except KeyError as exc:
            raise DataError(f"{path}: line {lineno}: missing field {exc}") from exc
    return pairs
