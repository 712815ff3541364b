"""Render label candidates into natural-language hypotheses.

A hypothesis is the aspect's interpretation template with the placeholder
replaced by the label name (word mode) or by the label's dictionary gloss
(definition mode). Multi-word labels are inserted verbatim; no inflection
or article insertion happens here. The none-label carries no gloss, so it
only ever receives a word-mode hypothesis and competes in word mode alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .errors import DataError
from .jsonio import read_json, write_json
from .types import (
    COMBINATION,
    DEFINITION,
    GENERATION_MODES,
    PLACEHOLDER,
    WORD,
    AspectSpec,
    Label,
    canonical,
)


@dataclass(frozen=True)
class Hypothesis:
    """A rendered hypothesis for one (label, mode)."""

    label: str
    mode: str
    text: str

    def __post_init__(self) -> None:
        if self.mode not in (WORD, DEFINITION):
            raise DataError(f"hypothesis mode must be word or definition, got {self.mode!r}")
        if not self.text:
            raise DataError(f"hypothesis text for label {self.label!r} is empty")


class GlossLexicon:
    """Map from label name to one dictionary gloss.

    Lookups are case-insensitive; every gloss must be nonempty.
    """

    def __init__(self, glosses: Mapping[str, str]) -> None:
        self._glosses: dict[str, str] = {}
        for name, gloss in glosses.items():
            if not str(gloss).strip():
                raise DataError(f"gloss for label {name!r} must be nonempty")
            self._glosses[canonical(name)] = str(gloss)

    def __len__(self) -> int:
        return len(self._glosses)

    def __contains__(self, name: str) -> bool:
        return canonical(name) in self._glosses

    def get(self, name: str) -> str:
        try:
            return self._glosses[canonical(name)]
        except KeyError:
            raise DataError(f"no gloss for label {name!r}") from None

    @classmethod
    def empty(cls) -> "GlossLexicon":
        return cls({})

    @classmethod
    def from_file(cls, path: str | Path) -> "GlossLexicon":
        doc = read_json(path)
        bad = [k for k, v in doc.items() if not isinstance(v, str)]
        if bad:
            raise DataError(f"{path}: gloss values must be strings (bad keys: {bad})")
        return cls(doc)

    def to_file(self, path: str | Path) -> None:
        write_json(path, dict(self._glosses))


def _render(aspect: AspectSpec, filler: str) -> str:
    return aspect.interpretation.replace(PLACEHOLDER, filler)


def render_word(aspect: AspectSpec, label: str | Label) -> Hypothesis:
    """Word-mode hypothesis: the label name fills the template."""
    name = label.name if isinstance(label, Label) else label
    resolved = aspect.find_label(name)
    return Hypothesis(label=resolved.name, mode=WORD, text=_render(aspect, resolved.name))


def render_definition(
    aspect: AspectSpec, label: str | Label, lexicon: GlossLexicon
) -> Hypothesis:
    """Definition-mode hypothesis: the label's gloss fills the template."""
    name = label.name if isinstance(label, Label) else label
    resolved = aspect.find_label(name)
    gloss = resolved.gloss if resolved.gloss is not None else lexicon.get(resolved.name)
    return Hypothesis(label=resolved.name, mode=DEFINITION, text=_render(aspect, gloss))


def hypothesis_set(
    aspect: AspectSpec,
    mode: str,
    lexicon: GlossLexicon | None = None,
) -> list[Hypothesis]:
    """All hypotheses for the aspect under the requested generation mode.

    word: one word-mode hypothesis per label (none-label included).
    definition: one definition-mode hypothesis per label; the none-label,
        having no gloss, contributes its word-mode hypothesis instead.
    combination: word and definition hypotheses per label; the none-label
        stays word-only.

    Output order is fixed: aspect label order, none-label last, and word
    before definition within a label.
    """
    if mode not in GENERATION_MODES:
        raise DataError(f"generation mode must be one of {GENERATION_MODES}, got {mode!r}")
    lexicon = lexicon if lexicon is not None else GlossLexicon.empty()
    out: list[Hypothesis] = []
    for lab in aspect.labels:
        if mode in (WORD, COMBINATION):
            out.append(render_word(aspect, lab))
        if mode in (DEFINITION, COMBINATION):
            out.append(render_definition(aspect, lab, lexicon))
    if aspect.none_label is not None:
        out.append(render_word(aspect, aspect.none_label))
    return out


def hypothesis_to_dict(hyp: Hypothesis) -> dict:
    return {"label": hyp.label, "mode": hyp.mode, "text": hyp.text}
