"""Materialize standardized benchmark splits from raw labeled corpora.

A split scheme is a JSON transcription of a benchmark's quota tables: per
(split, label, optional domain) cell it demands an exact instance count,
or "all-remaining" to sweep up everything left in the pool. Splits are
filled in the scheme's declared order (evaluation splits first), sampling
uniformly without replacement under a seeded generator whose algorithm
identifier is frozen in the scheme file, so the same raw data and seed
always reproduce byte-identical splits.

Alternative training versions (split names under the scheme's `seen` map)
are built from the instances left over after the evaluation splits; the
versions exclude test/dev but may overlap each other, since each version
is its own experimental universe. Quota shortfall is a hard error rather
than a best-effort fill: silently deviating from the published counts
would invalidate comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .errors import ConfigError, DataError
from .jsonio import read_json, read_jsonl
from .types import Instance, canonical, instance_from_dict, write_instances

ALL_REMAINING = "all-remaining"
SAMPLER_ID = "pcg64-cell-choice-v1"
SCHEME_VERSION = 1


@dataclass(frozen=True)
class QuotaCell:
    split: str
    label: str
    count: int | str  # nonnegative int or "all-remaining"
    domain: str | None = None

    def __post_init__(self) -> None:
        if isinstance(self.count, str):
            if self.count != ALL_REMAINING:
                raise ConfigError(
                    f"quota count must be an integer or {ALL_REMAINING!r}, "
                    f"got {self.count!r}"
                )
        elif self.count < 0:
            raise ConfigError(f"quota count must be nonnegative, got {self.count}")


@dataclass(frozen=True)
class SplitScheme:
    aspect: str
    labels: tuple[str, ...]
    none_label: str | None
    split_order: tuple[str, ...]
    quotas: tuple[QuotaCell, ...]
    seen: dict[str, tuple[str, ...]]  # version -> seen label names
    seed: int
    sampler: str = SAMPLER_ID
    aliases: Mapping[str, str] | None = None
    drop_multi_label: bool = False

    def __post_init__(self) -> None:
        if self.sampler != SAMPLER_ID:
            raise ConfigError(
                f"unknown sampler {self.sampler!r}; this build supports {SAMPLER_ID!r}"
            )
        known = {canonical(l) for l in self.all_labels}
        for cell in self.quotas:
            if cell.split not in self.split_order:
                raise ConfigError(f"quota references unknown split {cell.split!r}")
            if canonical(cell.label) not in known:
                raise ConfigError(f"quota references unknown label {cell.label!r}")
        versions = list(self.seen)
        for i, v in enumerate(versions):
            if self.train_split(v) not in self.split_order:
                raise ConfigError(f"seen set {v!r} has no split {self.train_split(v)!r}")
            for w in versions[i + 1 :]:
                overlap = {canonical(x) for x in self.seen[v]} & {
                    canonical(x) for x in self.seen[w]
                }
                if overlap:
                    raise ConfigError(
                        f"seen sets {v!r} and {w!r} overlap: {sorted(overlap)}"
                    )

    @property
    def all_labels(self) -> tuple[str, ...]:
        if self.none_label is not None:
            return self.labels + (self.none_label,)
        return self.labels

    @staticmethod
    def train_split(version: str) -> str:
        return f"train-{version}"

    @property
    def train_splits(self) -> set[str]:
        return {self.train_split(v) for v in self.seen}

    def canonical_label(self, name: str) -> str:
        """Resolve a raw label via aliases to the scheme's spelling."""
        key = canonical(name)
        if self.aliases:
            for alias, target in self.aliases.items():
                if canonical(alias) == key:
                    key = canonical(target)
                    break
        for lab in self.all_labels:
            if canonical(lab) == key:
                return lab
        raise DataError(f"unknown label {name!r} for aspect {self.aspect!r}")


def scheme_from_dict(doc: Mapping, where: str = "") -> SplitScheme:
    if doc.get("version") != SCHEME_VERSION:
        raise ConfigError(f"{where}scheme version must be {SCHEME_VERSION}")
    required = ("aspect", "labels", "split_order", "quotas", "seen", "seed")
    for field_name in required:
        if field_name not in doc:
            raise ConfigError(f"{where}scheme missing field {field_name!r}")
    quotas = []
    for entry in doc["quotas"]:
        quotas.append(
            QuotaCell(
                split=entry["split"],
                label=entry["label"],
                count=entry["count"],
                domain=entry.get("domain"),
            )
        )
    return SplitScheme(
        aspect=doc["aspect"],
        labels=tuple(doc["labels"]),
        none_label=doc.get("none_label"),
        split_order=tuple(doc["split_order"]),
        quotas=tuple(quotas),
        seen={v: tuple(names) for v, names in doc["seen"].items()},
        seed=int(doc["seed"]),
        sampler=doc.get("sampler", SAMPLER_ID),
        aliases=doc.get("aliases"),
        drop_multi_label=bool(doc.get("drop_multi_label", False)),
    )


def read_scheme(path: str | Path) -> SplitScheme:
    return scheme_from_dict(read_json(path), where=f"{path}: ")


@dataclass
class IngestResult:
    instances: list[Instance]
    dropped_multi_label: int = 0


def ingest(path: str | Path, scheme: SplitScheme) -> IngestResult:
    """Read an instance file, canonicalize label names through the scheme's
    aliases, and drop multi-label instances when the scheme is
    single-label. Unknown labels and malformed lines are errors."""
    instances: list[Instance] = []
    ids: set[str] = set()
    dropped = 0
    for lineno, row in read_jsonl(path):
        where = f"{path}: line {lineno}: "
        inst = instance_from_dict(row, where=where)
        try:
            gold = tuple(dict.fromkeys(scheme.canonical_label(g) for g in inst.gold))
        except DataError as exc:
            raise DataError(f"{where}{exc}") from exc
        if scheme.drop_multi_label and len(gold) > 1:
            dropped += 1
            continue
        if inst.id in ids:
            raise DataError(f"{where}duplicate instance id {inst.id!r}")
        ids.add(inst.id)
        instances.append(
            Instance(id=inst.id, text=inst.text, gold=gold, domain=inst.domain)
        )
    return IngestResult(instances=instances, dropped_multi_label=dropped)


def _cell_key(label: str, domain: str | None) -> tuple[str, str | None]:
    return canonical(label), domain


def _index_instances(
    instances: Sequence[Instance],
) -> dict[tuple[str, str | None], list[int]]:
    """Positions per (label, domain) and per (label, any-domain=None)."""
    index: dict[tuple[str, str | None], list[int]] = {}
    for pos, inst in enumerate(instances):
        for g in inst.gold:
            key = canonical(g)
            index.setdefault((key, None), []).append(pos)
            if inst.domain is not None:
                index.setdefault((key, inst.domain), []).append(pos)
    return index


def build_splits(
    instances: Sequence[Instance],
    scheme: SplitScheme,
    seed: int | None = None,
) -> dict[str, list[Instance]]:
    """Fill every split's quota cells by seeded sampling without
    replacement, honoring the scheme's split order."""
    rng = np.random.Generator(np.random.PCG64(scheme.seed if seed is None else seed))
    index = _index_instances(instances)
    built: dict[str, list[int]] = {}
    train_splits = scheme.train_splits
    for split in scheme.split_order:
        excluded: set[int] = set()
        for prior, members in built.items():
            if split in train_splits and prior in train_splits:
                continue  # alternative training versions may overlap
            excluded.update(members)
        chosen: dict[int, None] = {}
        # Incremental per-cell membership counts keep multi-label instances,
        # which arrive via sibling cells, from inflating a cell past quota.
        cell_counts: dict[tuple[str, str | None], int] = {}

        def count_into(pos: int) -> None:
            inst = instances[pos]
            for g in inst.gold:
                key = canonical(g)
                cell_counts[(key, None)] = cell_counts.get((key, None), 0) + 1
                if inst.domain is not None:
                    cell_counts[(key, inst.domain)] = (
                        cell_counts.get((key, inst.domain), 0) + 1
                    )

        for cell in scheme.quotas:
            if cell.split != split:
                continue
            key = _cell_key(cell.label, cell.domain)
            pool = [
                pos
                for pos in index.get(key, [])
                if pos not in excluded and pos not in chosen
            ]
            if cell.count == ALL_REMAINING:
                picked = pool
            else:
                already = cell_counts.get(key, 0)
                need = int(cell.count) - already
                if need < 0:
                    raise DataError(
                        f"split {split!r} cell (label={cell.label!r}, "
                        f"domain={cell.domain!r}): quota {cell.count} already "
                        f"exceeded by {-need} via multi-label co-selection"
                    )
                if len(pool) < need:
                    raise DataError(
                        f"split {split!r} cell (label={cell.label!r}, "
                        f"domain={cell.domain!r}): quota {cell.count} short by "
                        f"{need - len(pool)} (only {len(pool)} available)"
                    )
                if need == 0:
                    picked = []
                else:
                    sel = rng.choice(len(pool), size=need, replace=False)
                    picked = [pool[i] for i in sorted(sel.tolist())]
            for pos in picked:
                chosen[pos] = None
                count_into(pos)
        built[split] = sorted(chosen)
    return {
        split: [instances[pos] for pos in members] for split, members in built.items()
    }


def verify_splits(
    splits: Mapping[str, Sequence[Instance]], scheme: SplitScheme
) -> list[str]:
    """Conformance report: quota match, disjointness, and seen-set
    containment for training versions. Returns violation strings (empty
    when conforming)."""
    violations: list[str] = []
    for cell in scheme.quotas:
        if cell.count == ALL_REMAINING:
            continue
        members = splits.get(cell.split, [])
        actual = sum(
            1
            for inst in members
            if inst.has_gold(cell.label)
            and (cell.domain is None or inst.domain == cell.domain)
        )
        if actual != cell.count:
            violations.append(
                f"split {cell.split!r} cell (label={cell.label!r}, "
                f"domain={cell.domain!r}): expected {cell.count}, found {actual}"
            )
    train_splits = scheme.train_splits
    names = list(splits)
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            if a in train_splits and b in train_splits:
                continue
            overlap = {x.id for x in splits[a]} & {x.id for x in splits[b]}
            if overlap:
                sample = sorted(overlap)[:5]
                violations.append(
                    f"splits {a!r} and {b!r} overlap on {len(overlap)} ids "
                    f"(e.g. {sample})"
                )
    for version, seen in scheme.seen.items():
        split = scheme.train_split(version)
        seen_keys = {canonical(s) for s in seen}
        for inst in splits.get(split, []):
            if not any(canonical(g) in seen_keys for g in inst.gold):
                violations.append(
                    f"split {split!r}: instance {inst.id!r} carries only "
                    f"unseen labels {list(inst.gold)}"
                )
    return violations


def write_splits(
    splits: Mapping[str, Sequence[Instance]], out_dir: str | Path
) -> dict[str, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {}
    for split, members in splits.items():
        path = out / f"{split}.jsonl"
        write_instances(path, members)
        paths[split] = path
    return paths
