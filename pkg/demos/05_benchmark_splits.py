"""Deterministic benchmark splits from a quota scheme.

A scheme pins per-cell instance counts, the seen-label sets of the
training versions, and a seed. Evaluation splits fill first; training
versions are built from what remains, restricted to their seen labels.
"""

import random

from zentail import Instance, build_splits, verify_splits
from zentail.splits import scheme_from_dict

scheme = scheme_from_dict(
    {
        "version": 1,
        "aspect": "color",
        "labels": ["red", "blue", "green"],
        "none_label": None,
        "sampler": "pcg64-cell-choice-v1",
        "seed": 12,
        "split_order": ["test", "dev", "train-v0", "train-v1"],
        "seen": {"v0": ["red", "green"], "v1": ["blue"]},
        "quotas": [
            {"split": "test", "label": "red", "count": 5},
            {"split": "test", "label": "blue", "count": 5},
            {"split": "test", "label": "green", "count": 5},
            {"split": "dev", "label": "red", "count": 3},
            {"split": "dev", "label": "blue", "count": 3},
            {"split": "dev", "label": "green", "count": 3},
            {"split": "train-v0", "label": "red", "count": "all-remaining"},
            {"split": "train-v0", "label": "green", "count": "all-remaining"},
            {"split": "train-v1", "label": "blue", "count": "all-remaining"},
        ],
    }
)

rng = random.Random(0)
raw = [
    Instance(id=f"x{i}", text=f"item {i}", gold=(rng.choice(scheme.labels),))
    for i in range(120)
]

splits = build_splits(raw, scheme)
for name, members in splits.items():
    by_label = {}
    for inst in members:
        by_label[inst.gold[0]] = by_label.get(inst.gold[0], 0) + 1
    print(f"{name:>9}: {len(members):3d} instances  {by_label}")

print("\nviolations:", verify_splits(splits, scheme) or "none")

again = build_splits(raw, scheme)
print("same seed reproduces the same splits:", splits == again)
print("a different seed samples differently:",
      splits != build_splits(raw, scheme, seed=99))
