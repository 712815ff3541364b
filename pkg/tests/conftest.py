import importlib.resources

import pytest

from zentail.hypotheses import GlossLexicon
from zentail.types import AspectSpec, Instance, Label, read_aspect

CONFIGS = importlib.resources.files("zentail") / "configs"


def config_path(*parts: str) -> str:
    return str(CONFIGS.joinpath(*parts))


@pytest.fixture(scope="session")
def topic_aspect() -> AspectSpec:
    return read_aspect(config_path("aspects", "topic.json"))


@pytest.fixture(scope="session")
def emotion_aspect() -> AspectSpec:
    return read_aspect(config_path("aspects", "emotion.json"))


@pytest.fixture(scope="session")
def situation_aspect() -> AspectSpec:
    return read_aspect(config_path("aspects", "situation.json"))


@pytest.fixture(scope="session")
def topic_lexicon() -> GlossLexicon:
    return GlossLexicon.from_file(config_path("glosses", "topic.json"))


@pytest.fixture(scope="session")
def emotion_lexicon() -> GlossLexicon:
    return GlossLexicon.from_file(config_path("glosses", "emotion.json"))


@pytest.fixture(scope="session")
def situation_lexicon() -> GlossLexicon:
    return GlossLexicon.from_file(config_path("glosses", "situation.json"))


@pytest.fixture
def toy_aspect() -> AspectSpec:
    return AspectSpec(
        name="mood",
        interpretation="this text expresses {label}",
        labels=(Label("joy"), Label("anger"), Label("fear")),
        task_kind="single_label",
        none_label=Label("none"),
    )


def make_instances(labels, per_label=1, prefix="i", domain=None):
    out = []
    n = 0
    for label in labels:
        for _ in range(per_label):
            out.append(
                Instance(
                    id=f"{prefix}{n:04d}",
                    text=f"text about {label} number {n}",
                    gold=(label,),
                    domain=domain,
                )
            )
            n += 1
    return out
