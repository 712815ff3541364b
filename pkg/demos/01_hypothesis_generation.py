"""Turning labels into hypotheses.

Each aspect carries an interpretation template with one {label} slot.
A label candidate fills the slot with its name (word mode) or with its
dictionary gloss (definition mode); combination mode emits both.
"""

import importlib.resources

from zentail import GlossLexicon, hypothesis_set, read_aspect, render_definition, render_word

CONFIGS = importlib.resources.files("zentail") / "configs"

for name in ("topic", "emotion", "situation"):
    aspect = read_aspect(str(CONFIGS / "aspects" / f"{name}.json"))
    lexicon = GlossLexicon.from_file(str(CONFIGS / "glosses" / f"{name}.json"))
    print(f"== {aspect.name} ({aspect.task_kind}) ==")
    print(f"template: {aspect.interpretation!r}")

    example = aspect.labels[min(5, len(aspect.labels) - 1)]
    print("word:      ", render_word(aspect, example).text)
    print("definition:", render_definition(aspect, example, lexicon).text)

    for mode in ("word", "definition", "combination"):
        hyps = hypothesis_set(aspect, mode, lexicon)
        print(f"{mode:>12}: {len(hyps)} hypotheses")
    print()

# The none-label has no gloss, so it competes in word mode only:
emotion = read_aspect(str(CONFIGS / "aspects" / "emotion.json"))
lexicon = GlossLexicon.from_file(str(CONFIGS / "glosses" / "emotion.json"))
for hyp in hypothesis_set(emotion, "combination", lexicon):
    if hyp.label == "none":
        print("none-label hypothesis:", (hyp.mode, hyp.text))
