"""From classification data to entailment pairs.

Every instance text acts as a premise. For evaluation, every label of the
aspect contributes a hypothesis; for training, only the seen labels do,
so the training file never leaks unseen-label supervision.
"""

from zentail import (
    AspectSpec,
    Instance,
    Label,
    build_eval_pairs,
    build_train_pairs,
    partition_for,
)

aspect = AspectSpec(
    name="mood",
    interpretation="this text expresses {label}",
    labels=(Label("joy"), Label("anger"), Label("fear")),
    task_kind="single_label",
    none_label=Label("none"),
)
partition = partition_for(aspect, seen=["joy", "anger"])
print("seen:", sorted(partition.seen), " unseen:", sorted(partition.unseen))

instance = Instance(id="d1", text="what a wonderful surprise party", gold=("joy",))

print("\ntraining pairs (seen labels only):")
for pair in build_train_pairs([instance], aspect, partition, "word"):
    print(f"  [{pair.gold:>10}] {pair.hypothesis.text}")

print("\nevaluation pairs (full label set, none included):")
for pair in build_eval_pairs([instance], aspect, "word"):
    print(f"  [{pair.gold:>10}] {pair.hypothesis.text}")

# counting identity: n single-label instances, k seen labels ->
# n entailing pairs and n*(k-1) non-entailing pairs
instances = [
    Instance(id=f"d{j}", text=f"text {j}", gold=("joy" if j % 2 else "anger",))
    for j in range(6)
]
pairs = build_train_pairs(instances, aspect, partition, "word")
n_entail = sum(1 for p in pairs if p.gold == "entail")
print(f"\n6 instances, 2 seen labels -> {n_entail} entail / {len(pairs) - n_entail} non-entail")
