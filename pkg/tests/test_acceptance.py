"""Acceptance suite.

Each test implements one acceptance criterion at its stated tolerance and
prints a PASS line when it holds (run pytest with `-s` to see the lines,
or execute this module directly: `python tests/test_acceptance.py`).
"""

import itertools
import math
import random
import sys
import time
from pathlib import Path

import pytest

from conftest import config_path
from oracles import (
    oracle_decide_multi,
    oracle_decide_single,
    oracle_dense_concept_score,
    oracle_weighted_f1,
)
from zentail.hypotheses import GlossLexicon, render_definition, render_word
from zentail.metrics import accuracy, maps_from_instances, maps_from_predictions, weighted_f1
from zentail.pairs import ENTAIL, NON_ENTAIL, build_eval_pairs, build_train_pairs
from zentail.pipeline import RunConfig, run_pipeline
from zentail.policy import PolicyConfig, decide_multi, decide_single, predict
from zentail.scorers import MajorityScorer, ensemble, esa_build, esa_score, score_pairs
from zentail.splits import build_splits, verify_splits, write_splits
from zentail.tokenize import tokenize
from zentail.types import (
    AspectSpec,
    Instance,
    Label,
    SeenUnseenPartition,
    partition_for,
    read_aspect,
)
from zentail.splits import read_scheme

FIXTURE = Path(__file__).resolve().parent.parent / "fixtures" / "e2e"


def report_pass(name: str) -> None:
    print(f"ACCEPTANCE PASS: {name}")


# ---------------------------------------------------------------------------
# 1. Decision-policy oracle equivalence
# ---------------------------------------------------------------------------

def test_decision_policy_oracle_equivalence():
    started = time.monotonic()
    names = ("a", "b", "c")
    values = [i / 10 for i in range(11)]
    partitions = []
    for seen_size in (2, 1):
        for seen in itertools.combinations(names, seen_size):
            partitions.append(frozenset(seen))
    assert len(partitions) == 6
    config = PolicyConfig(alpha=0.05, positive_threshold=0.5)
    mismatches = 0
    checked = 0
    for seen in partitions:
        partition = SeenUnseenPartition(
            seen=seen, unseen=frozenset(names) - seen
        )
        for combo in itertools.product(values, repeat=3):
            probs = dict(zip(names, combo))
            got_single = decide_single(probs, partition, config)
            want_single = oracle_decide_single(probs, seen, config.alpha)
            got_multi = set(decide_multi(probs, partition, config, "none"))
            want_multi = oracle_decide_multi(probs, seen, config.alpha)
            checked += 1
            if got_single != want_single or got_multi != want_multi:
                mismatches += 1
    elapsed = time.monotonic() - started
    assert checked == 6 * 11 ** 3
    assert mismatches == 0
    assert elapsed < 60.0
    report_pass(
        f"decision-policy oracle equivalence ({checked} grid points, "
        f"{elapsed:.1f}s, 0 mismatches)"
    )


# ---------------------------------------------------------------------------
# 2. Majority baseline accuracy on a balanced 10-label test set
# ---------------------------------------------------------------------------

def test_majority_balanced_ten_labels_accuracy_point_one():
    aspect = AspectSpec(
        name="balanced",
        interpretation="this text is about {label}",
        labels=tuple(Label(f"topic{i}") for i in range(10)),
        task_kind="single_label",
    )
    instances = [
        Instance(id=f"i{j:03d}", text=f"document {j}", gold=(f"topic{j % 10}",))
        for j in range(100)
    ]
    scorer = MajorityScorer.uniform(aspect)
    pairs = build_eval_pairs(instances, aspect, "word")
    table = score_pairs(scorer, pairs)
    partition = partition_for(aspect, ())
    predictions = predict(
        table, [i.id for i in instances], aspect, partition, PolicyConfig()
    )
    acc = accuracy(maps_from_predictions(predictions), maps_from_instances(instances))
    assert acc == 0.1
    report_pass("majority baseline on balanced 10-label test set: accuracy 0.100 exactly")


# ---------------------------------------------------------------------------
# 3. Canonical hypothesis strings, byte-exact
# ---------------------------------------------------------------------------

def test_canonical_hypothesis_strings_byte_exact():
    cases = [
        ("topic", "sports", "word", "this text is about sports"),
        ("emotion", "anger", "word", "this text expresses anger"),
        ("situation", "shelter", "word", "The people there need shelter"),
        (
            "topic", "sports", "definition",
            "this text is about an active diversion requiring physical exertion and competition",
        ),
        (
            "emotion", "anger", "definition",
            "this text expresses a strong emotion; a feeling that is oriented "
            "toward some real or supposed grievance",
        ),
        (
            "situation", "shelter", "definition",
            "The people there need a structure that provides privacy and protection from danger",
        ),
    ]
    for aspect_name, label, mode, want in cases:
        aspect = read_aspect(config_path("aspects", f"{aspect_name}.json"))
        if mode == "word":
            got = render_word(aspect, label).text
        else:
            lexicon = GlossLexicon.from_file(config_path("glosses", f"{aspect_name}.json"))
            got = render_definition(aspect, label, lexicon).text
        assert got == want, f"{aspect_name}/{label}/{mode}: {got!r}"
    report_pass("hypothesis generation reproduces the six canonical strings byte-exactly")


# ---------------------------------------------------------------------------
# 4. Split builder reproduces every benchmark count on synthetic supply
# ---------------------------------------------------------------------------

def _synthetic_supply(scheme, extra_per_seen_label=37):
    """Single-label synthetic instances with enough per-cell supply for
    every quota, plus spare instances for all-remaining training cells."""
    needed = {}
    for cell in scheme.quotas:
        if cell.count == "all-remaining":
            continue
        key = (cell.label, cell.domain)
        needed[key] = needed.get(key, 0) + cell.count
    seen_labels = {l for names in scheme.seen.values() for l in names}
    for label in seen_labels:
        domain = None
        for (lab, dom) in list(needed):
            if lab == label:
                domain = dom
                break
        needed[(label, domain)] = needed.get((label, domain), 0) + extra_per_seen_label
    instances = []
    n = 0
    for (label, domain), count in needed.items():
        for _ in range(count):
            instances.append(
                Instance(id=f"s{n:07d}", text="x", gold=(label,), domain=domain)
            )
            n += 1
    return instances


def _assert_counts(splits, scheme):
    violations = verify_splits(splits, scheme)
    assert violations == [], violations[:3]


def test_split_builder_reproduces_benchmark_counts(tmp_path):
    # --- emotion: every cell of the fixed test/dev tables ---
    emotion = read_scheme(config_path("schemes", "emotion.json"))
    supply = _synthetic_supply(emotion)
    runs = [build_splits(supply, emotion) for _ in range(2)]
    for splits in runs:
        _assert_counts(splits, emotion)
        assert len(splits["test"]) == 16000
        assert len(splits["dev"]) == 7700
        t = splits["test"]
        assert sum(1 for i in t if i.domain == "tweets" and i.gold == ("sadness",)) == 1500
        assert sum(1 for i in t if i.domain == "fairytales" and i.gold == ("joy",)) == 500
        d = splits["dev"]
        assert sum(1 for i in d if i.domain == "fairytales" and i.gold == ("joy",)) == 300
        seen_v0 = set(emotion.seen["v0"])
        assert all(set(i.gold) <= seen_v0 for i in splits["train-v0"])
    assert runs[0] == runs[1]

    # --- situation: Table counts incl. train versions; byte determinism ---
    situation = read_scheme(config_path("schemes", "situation.json"))
    supply = _synthetic_supply(situation, extra_per_seen_label=0)
    runs = [build_splits(supply, situation) for _ in range(2)]
    for splits in runs:
        _assert_counts(splits, situation)
        assert sum(1 for i in splits["test"] if i.has_gold("shelter")) == 396
        assert sum(1 for i in splits["train-v0"] if i.has_gold("water supply")) == 492
        v0_labels = {i.gold[0] for i in splits["train-v0"]}
        assert "evacuation" not in v0_labels
        assert "shelter" not in v0_labels
        assert "food supply" not in v0_labels
    assert runs[0] == runs[1]
    dirs = [tmp_path / "sit_a", tmp_path / "sit_b"]
    for d, splits in zip(dirs, runs):
        write_splits(splits, d)
    for name in runs[0]:
        assert (dirs[0] / f"{name}.jsonl").read_bytes() == (
            dirs[1] / f"{name}.jsonl"
        ).read_bytes()

    # --- topic: 10k/6k/130k per label at full scale ---
    topic = read_scheme(config_path("schemes", "topic.json"))
    supply = _synthetic_supply(topic, extra_per_seen_label=0)
    assert len(supply) == 1_460_000
    runs = [build_splits(supply, topic) for _ in range(2)]
    for splits in runs:
        _assert_counts(splits, topic)
        assert len(splits["test"]) == 100_000
        assert len(splits["dev"]) == 60_000
        assert len(splits["train-v0"]) == 650_000
        assert len(splits["train-v1"]) == 650_000
    assert runs[0] == runs[1]
    report_pass("split builder reproduces every benchmark count, deterministically")


# ---------------------------------------------------------------------------
# 5. Weighted F1 oracle equivalence
# ---------------------------------------------------------------------------

def test_weighted_f1_oracle_equivalence():
    golds = {"1": frozenset("X"), "2": frozenset("X"), "3": frozenset("X"), "4": frozenset("Y")}
    preds = {"1": frozenset("X"), "2": frozenset("X"), "3": frozenset("Y"), "4": frozenset("Y")}
    fixed = weighted_f1(preds, golds, ["X", "Y"]).overall
    assert fixed == pytest.approx(0.7667, abs=1e-4)

    rng = random.Random(1729)
    for trial in range(1000):
        labels = [f"l{i}" for i in range(rng.randint(1, 5))]
        n = rng.randint(1, 20)
        multi = trial % 2 == 0
        golds, preds = {}, {}
        for j in range(n):
            if multi:
                gold = rng.sample(labels, k=rng.randint(1, len(labels)))
                pred = rng.sample(labels, k=rng.randint(1, len(labels)))
            else:
                gold = [rng.choice(labels)]
                pred = [rng.choice(labels)]
            golds[f"i{j}"] = frozenset(gold)
            preds[f"i{j}"] = frozenset(pred)
        got = weighted_f1(preds, golds, labels).overall
        want = oracle_weighted_f1(preds, golds, labels)
        assert got == pytest.approx(want, abs=1e-9)
    report_pass(
        "weighted F1 matches the confusion-matrix oracle on 1000 random "
        "datasets (1e-9) and the fixed example (0.7667)"
    )


# ---------------------------------------------------------------------------
# 6. Concept-space scoring vs dense TF-IDF oracle
# ---------------------------------------------------------------------------

def test_concept_scoring_matches_dense_oracle():
    toy = [
        ("Alpha", "zebra zebra lion"),
        ("Beta", "lion tiger"),
        ("Gamma", "tiger bear common"),
        ("Delta", "bear wolf common"),
        ("Epsilon", "wolf snake common"),
    ]
    index = esa_build(toy)
    assert index.token_weights("zebra")[0] == pytest.approx(2 * math.log(5), abs=1e-12)

    vocab = ["ant", "bee", "cat", "dog", "elk", "fox", "gnu", "hen", "imp", "jay"]
    rng = random.Random(31)
    for _ in range(25):
        n_articles = rng.randint(2, 10)
        corpus = []
        for a in range(n_articles):
            body = " ".join(rng.choices(vocab, k=rng.randint(3, 15)))
            corpus.append((f"art{a}", body))
        index = esa_build(corpus)
        for _ in range(6):
            premise = " ".join(rng.choices(vocab, k=rng.randint(1, 8)))
            label_text = " ".join(rng.choices(vocab, k=rng.randint(1, 3)))
            got = esa_score(index, premise, label_text)
            want = oracle_dense_concept_score(corpus, premise, label_text, tokenize)
            assert got == pytest.approx(want, abs=1e-9)
    report_pass(
        "concept-space scoring equals the dense TF-IDF oracle (1e-9); "
        "toy index carries the hand-computed weight 2*ln(5)"
    )


# ---------------------------------------------------------------------------
# 7. Ensemble distribution properties
# ---------------------------------------------------------------------------

def test_ensemble_distribution_properties():
    p_entail, p_non = ensemble([(0.8, 0.2), (0.6, 0.4)])
    assert p_entail == pytest.approx(0.6900, abs=1e-4)

    rng = random.Random(47)
    for _ in range(100):
        dists = [
            (p, 1.0 - p)
            for p in (rng.random() for _ in range(rng.randint(1, 6)))
        ]
        out = ensemble(dists)
        assert out[0] + out[1] == pytest.approx(1.0, abs=1e-9)
        shuffled = dists[:]
        rng.shuffle(shuffled)
        assert ensemble(shuffled) == pytest.approx(out, abs=1e-12)
    report_pass(
        "ensemble sums to 1 (1e-9), reproduces the two-model value 0.6900, "
        "and is order-invariant over 100 random inputs"
    )


# ---------------------------------------------------------------------------
# 8. Entailment-pair counting identities
# ---------------------------------------------------------------------------

def test_pair_counting_identities_random_splits():
    rng = random.Random(99)
    for _ in range(100):
        k_seen = rng.randint(1, 6)
        k_unseen = rng.randint(0, 4)
        labels = tuple(Label(f"lab{i}") for i in range(k_seen + k_unseen))
        aspect = AspectSpec(
            name="syn",
            interpretation="about {label}",
            labels=labels,
            task_kind="single_label",
        )
        seen = aspect.label_names[:k_seen]
        partition = partition_for(aspect, seen)
        n = rng.randint(0, 30)
        instances = [
            Instance(id=f"i{j}", text="t", gold=(rng.choice(seen),))
            for j in range(n)
        ]
        pairs = build_train_pairs(instances, aspect, partition, "word")
        assert sum(1 for p in pairs if p.gold == ENTAIL) == n
        assert sum(1 for p in pairs if p.gold == NON_ENTAIL) == n * (k_seen - 1)
        unseen_keys = {u.lower() for u in partition.unseen}
        assert not any(p.hypothesis.label.lower() in unseen_keys for p in pairs)
    report_pass(
        "pair counting identities hold on 100 random synthetic splits; "
        "training pairs never mention unseen labels"
    )


# ---------------------------------------------------------------------------
# 9. End-to-end pipeline on the bundled fixture
# ---------------------------------------------------------------------------

def test_end_to_end_fixture_fast_and_reproducible(tmp_path):
    started = time.monotonic()
    outs = []
    for run_dir in ("a", "b"):
        config = RunConfig.from_file(FIXTURE / "config.json")
        config.out_dir = str(tmp_path / run_dir)
        report = run_pipeline(config)
        assert report.n_instances == 60
        outs.append(Path(config.out_dir))
    elapsed = time.monotonic() - started
    assert elapsed < 10.0
    names = sorted(p.name for p in outs[0].iterdir())
    assert names == sorted(p.name for p in outs[1].iterdir())
    for name in names:
        assert (outs[0] / name).read_bytes() == (outs[1] / name).read_bytes(), name
    report_pass(
        f"end-to-end pipeline on the bundled 60-instance fixture: "
        f"{elapsed:.2f}s for two runs, byte-identical outputs"
    )


CRITERIA = [
    test_decision_policy_oracle_equivalence,
    test_majority_balanced_ten_labels_accuracy_point_one,
    test_canonical_hypothesis_strings_byte_exact,
    test_split_builder_reproduces_benchmark_counts,
    test_weighted_f1_oracle_equivalence,
    test_concept_scoring_matches_dense_oracle,
    test_ensemble_distribution_properties,
    test_pair_counting_identities_random_splits,
    test_end_to_end_fixture_fast_and_reproducible,
]


def main() -> int:
    import tempfile

    failures = 0
    for fn in CRITERIA:
        kwargs = {}
        if "tmp_path" in fn.__code__.co_varnames[: fn.__code__.co_argcount]:
            kwargs["tmp_path"] = Path(tempfile.mkdtemp())
        try:
            fn(**kwargs)
        except AssertionError as exc:
            failures += 1
            print(f"ACCEPTANCE FAIL: {fn.__name__}: {exc}")
    if failures:
        print(f"{failures} acceptance criteria failed")
        return 1
    print("all acceptance criteria passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
