"""Noun-modifier relation classification by nearest-neighbour cosine.

Thirty semantic relation classes, organized into five groups; single
nearest-neighbour with leave-one-out cross-validation, a two-neighbour
margin variant for trading precision against recall, and macroaveraged
per-class metrics.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .analogy import f_measure, question_rng, ranked_indices
from .errors import DataFormatError
from .vectors import RelationVector, WordPair, cosine

# (class name, abbreviation, example phrase, group)
RELATION_CLASSES: tuple[tuple[str, str, str, str], ...] = (
    ("cause", "cs", "flu virus", "causality"),
    ("effect", "eff", "exam anxiety", "causality"),
    ("purpose", "prp", "concert hall", "causality"),
    ("detraction", "detr", "headache pill", "causality"),
    ("frequency", "freq", "daily exercise", "temporality"),
    ("time at", "tat", "morning exercise", "temporality"),
    ("time through", "tthr", "six-hour meeting", "temporality"),
    ("direction", "dir", "outgoing mail", "spatial"),
    ("location", "loc", "home town", "spatial"),
    ("location at", "lat", "desert storm", "spatial"),
    ("location from", "lfr", "foreign capital", "spatial"),
    ("agent", "ag", "student protest", "participant"),
    ("beneficiary", "ben", "student discount", "participant"),
    ("instrument", "inst", "laser printer", "participant"),
    ("object", "obj", "metal separator", "participant"),
    ("object property", "obj_prop", "sunken ship", "participant"),
    ("part", "part", "printer tray", "participant"),
    ("possessor", "posr", "national debt", "participant"),
    ("property", "prop", "blue book", "participant"),
    ("product", "prod", "plum tree", "participant"),
    ("source", "src", "olive oil", "participant"),
    ("stative", "st", "sleeping dog", "participant"),
    ("whole", "whl", "daisy chain", "participant"),
    ("container", "cntr", "film music", "quality"),
    ("content", "cont", "apple cake", "quality"),
    ("equative", "eq", "player coach", "quality"),
    ("material", "mat", "brick house", "quality"),
    ("measure", "meas", "expensive book", "quality"),
    ("topic", "top", "weather report", "quality"),
    ("type", "type", "oak tree", "quality"),
)

GROUPS = ("causality", "participant", "quality", "spatial", "temporality")

_GROUP_OF = {abbr: group for _, abbr, _, group in RELATION_CLASSES}
ALL_ABBREVIATIONS = tuple(abbr for _, abbr, _, _ in RELATION_CLASSES)


def group_of(label: str) -> str:
    """Map a 30-class abbreviation to its 5-way group."""
    try:
        return _GROUP_OF[label]
    except KeyError:
        raise DataFormatError(f"unknown relation class {label!r}") from None


@dataclass(frozen=True)
class LabeledNounModifier:
    modifier: str
    head: str
    label: str

    def pair(self) -> WordPair:
        """Modifier first, head second, by fixed convention."""
        return WordPair(self.modifier, self.head)


def load_labeled_pairs(path: str | Path) -> list[LabeledNounModifier]:
    """TSV: modifier, head, class abbreviation; extra columns ignored,
    '#' lines are comments."""
    items = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.rstrip("\n").split("\t")
        if len(fields) < 3:
            raise DataFormatError(f"{path}:{lineno}: expected modifier, head, class")
        modifier, head, label = (f.strip().lower() for f in fields[:3])
        if label not in _GROUP_OF:
            raise DataFormatError(f"{path}:{lineno}: unknown relation class {label!r}")
        items.append(LabeledNounModifier(modifier, head, label))
    return items


# ---------------------------------------------------------------------------
# Classification

def _neighbour_order(train: Sequence[RelationVector], probe: RelationVector,
                     rng: random.Random | None) -> list[int]:
    scores = [cosine(probe, v) for v in train]
    return ranked_indices(scores, rng)


def classify_1nn(train: Sequence[RelationVector], labels: Sequence[str],
                 probe: RelationVector,
                 rng: random.Random | None = None) -> str:
    """Label of the training vector with the largest cosine to the probe."""
    if not train:
        raise ValueError("training set is empty")
    order = _neighbour_order(train, probe, rng)
    return labels[order[0]]


def classify_margin(train: Sequence[RelationVector], labels: Sequence[str],
                    probe: RelationVector, threshold: float,
                    rng: random.Random | None = None) -> tuple[str, ...]:
    """Two-nearest-neighbour guess set: 0 (abstain), 1, or 2 labels.

    If both nearest neighbours share a class, that class is output
    regardless of the threshold. Otherwise the margin rule from the
    analogy solver applies to the two neighbour cosines.
    """
    if len(train) < 2:
        raise ValueError("need at least two training items")
    scores = [cosine(probe, v) for v in train]
    order = ranked_indices(scores, rng)
    n1, n2 = order[0], order[1]
    if labels[n1] == labels[n2]:
        return (labels[n1],)
    margin = scores[n1] - scores[n2]
    if threshold > margin:
        return ()
    if threshold < -margin:
        return (labels[n1], labels[n2])
    return (labels[n1],)


@dataclass
class ClassMetrics:
    label: str
    size: int
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f: float


@dataclass
class LoocvResult:
    per_class: list[ClassMetrics]
    confusion: dict[tuple[str, str | None], int]  # (true, guessed or None=abstain)
    guesses_made: int
    abstained: int
    doubles: int
    correct: int  # items whose guess set contains the true class
    total: int


def loocv(vectors: Sequence[RelationVector], labels: Sequence[str],
          threshold: float = 0.0, granularity: int = 30, seed: int = 0,
          classes: Sequence[str] | None = None,
          tie_break: str = "random") -> LoocvResult:
    """Leave-one-out cross-validation with the two-neighbour margin rule.

    granularity 5 collapses labels through group_of before training and
    scoring; 30 keeps them as-is. Per-class accounting: a guess set
    containing the true class adds a TP to it and an FP to every other
    guessed class; a miss adds an FN to the true class and an FP to each
    guessed class; abstention adds an FN to the true class.
    """
    if len(vectors) != len(labels):
        raise ValueError("one label per vector required")
    if len(vectors) < 2:
        raise ValueError("need at least two items")
    if granularity == 5:
        labels = [group_of(lab) for lab in labels]
        default_classes = GROUPS
    elif granularity == 30:
        default_classes = ALL_ABBREVIATIONS if set(labels) <= set(ALL_ABBREVIATIONS) \
            else tuple(sorted(set(labels)))
    else:
        raise ValueError("granularity must be 30 or 5")
    if classes is None:
        classes = default_classes

    tp = {c: 0 for c in classes}
    fp = {c: 0 for c in classes}
    fn = {c: 0 for c in classes}
    size = {c: 0 for c in classes}
    confusion: dict[tuple[str, str | None], int] = {}
    guesses_made = abstained = doubles = correct = 0

    for i, probe in enumerate(vectors):
        true = labels[i]
        size[true] += 1
        train = [v for j, v in enumerate(vectors) if j != i]
        train_labels = [lab for j, lab in enumerate(labels) if j != i]
        rng = question_rng(seed, i) if tie_break == "random" else None
        if len(train) == 1:
            # too small for the two-neighbour rule; plain 1-NN
            guesses = (train_labels[0],)
        else:
            guesses = classify_margin(train, train_labels, probe, threshold, rng)

        guesses_made += len(guesses)
        if not guesses:
            abstained += 1
            fn[true] += 1
            confusion[(true, None)] = confusion.get((true, None), 0) + 1
            continue
        if len(guesses) == 2:
            doubles += 1
        if true in guesses:
            correct += 1
            tp[true] += 1
            for g in guesses:
                if g != true:
                    fp[g] += 1
        else:
            fn[true] += 1
            for g in guesses:
                fp[g] += 1
        for g in guesses:
            confusion[(true, g)] = confusion.get((true, g), 0) + 1

    per_class = []
    for c in classes:
        p = tp[c] / (tp[c] + fp[c]) if tp[c] + fp[c] else 0.0
        r = tp[c] / (tp[c] + fn[c]) if tp[c] + fn[c] else 0.0
        per_class.append(ClassMetrics(c, size[c], tp[c], fp[c], fn[c],
                                      p, r, f_measure(p, r)))
    return LoocvResult(per_class, confusion, guesses_made, abstained, doubles,
                       correct, len(vectors))


def macroaverage(per_class: Sequence[ClassMetrics]) -> tuple[float, float, float]:
    """Unweighted means of per-class precision, recall, and F. The averaged
    F is the mean of per-class F values, not the harmonic mean of the
    averaged precision and recall."""
    if not per_class:
        raise ValueError("no classes to average")
    n = len(per_class)
    return (sum(m.precision for m in per_class) / n,
            sum(m.recall for m in per_class) / n,
            sum(m.f for m in per_class) / n)
