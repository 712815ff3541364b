"""The seen/unseen decision policy.

Labels that had training data are trusted less at decision time: a
positive seen label must beat the best positive unseen label by more than
the margin alpha, or the unseen label wins (single-label) / the seen
label is demoted (multi-label). Multi-label predictions fall back to the
none type when nothing survives.
"""

from zentail import PolicyConfig, SeenUnseenPartition, decide_multi, decide_single

partition = SeenUnseenPartition(seen=frozenset({"A"}), unseen=frozenset({"B"}))
config = PolicyConfig(alpha=0.05, positive_threshold=0.5)

print("single-label, alpha=0.05:")
for probs in ({"A": 0.90, "B": 0.88}, {"A": 0.96, "B": 0.88}, {"A": 0.30, "B": 0.70}):
    choice = decide_single(probs, partition, config)
    print(f"  probs={probs} -> {choice}")

print("\nmulti-label, alpha=0.05 (none is the fallback):")
for probs in (
    {"A": 0.90, "B": 0.87},   # seen A within the margin of unseen B: demoted
    {"A": 0.95, "B": 0.60},   # A clears the margin: both survive
    {"A": 0.40, "B": 0.30},   # nothing positive
):
    labels = decide_multi(probs, partition, config, none_label="none")
    print(f"  probs={probs} -> {sorted(labels)}")

print("\nwith alpha=0 and every label seen, the single-label rule is plain argmax:")
all_seen = SeenUnseenPartition(seen=frozenset({"A", "B"}), unseen=frozenset())
flat = PolicyConfig(alpha=0.0)
print("  probs={'A': 0.52, 'B': 0.61} ->", decide_single({"A": 0.52, "B": 0.61}, all_seen, flat))
