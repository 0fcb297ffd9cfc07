"""SAT-style analogy solving: cosine scoring, margin policy, pool ranking,
precision/recall/F accounting, and raw SAT scores."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .errors import DataFormatError
from .vectors import RelationVector, WordPair, cosine

CHOICE_LETTERS = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class AnalogyQuestion:
    stem: WordPair
    choices: tuple[WordPair, ...]
    answer: int

    def __post_init__(self):
        if len(self.choices) < 2:
            raise ValueError("a question needs at least two choices")
        if not 0 <= self.answer < len(self.choices):
            raise ValueError(f"answer index {self.answer} out of range")

    def pairs(self) -> list[WordPair]:
        return [self.stem, *self.choices]


@dataclass
class GuessOutcome:
    guesses: tuple[int, ...]  # ordered by descending cosine; size 0, 1, or 2
    margin: float
    skipped_zero_stem: bool = False


def ranked_indices(scores: Sequence[float], rng: random.Random | None = None) -> list[int]:
    """Indices sorted by descending score; exact ties broken randomly when an
    rng is given, by ascending index otherwise."""
    n = len(scores)
    if rng is None:
        tiebreak = list(range(n))
    else:
        tiebreak = rng.sample(range(n), n)
    return sorted(range(n), key=lambda i: (-scores[i], tiebreak[i]))


def score_choices(stem_vec: RelationVector,
                  choice_vecs: Sequence[RelationVector]) -> list[float]:
    """One cosine per choice, order preserved."""
    return [cosine(stem_vec, v) for v in choice_vecs]


def decide(cosines: Sequence[float], threshold: float,
           stem_is_zero: bool = False,
           rng: random.Random | None = None) -> GuessOutcome:
    """Apply the margin-threshold guess policy to a question's cosines.

    The margin m is the best cosine minus the second best. If the stem
    vector is all zeros the question is skipped outright. Otherwise:
    -m <= t <= +m guesses the best choice; t > m skips; t < -m guesses both
    the best and the second best.
    """
    if len(cosines) < 2:
        raise ValueError("need at least two cosines")
    if stem_is_zero:
        return GuessOutcome((), 0.0, skipped_zero_stem=True)
    order = ranked_indices(cosines, rng)
    best, second = order[0], order[1]
    margin = cosines[best] - cosines[second]
    if threshold > margin:
        return GuessOutcome((), margin)
    if threshold < -margin:
        return GuessOutcome((best, second), margin)
    return GuessOutcome((best,), margin)


def question_rng(seed: int, ordinal: int) -> random.Random:
    """Per-question generator; depends only on the global seed and ordinal."""
    return random.Random(seed ^ ordinal)


def solve_all(questions: Sequence[AnalogyQuestion],
              vectors: dict[str, RelationVector],
              threshold: float, seed: int = 0,
              tie_break: str = "random") -> list[GuessOutcome]:
    """Score and decide every question; tie_break is "random" or "first"."""
    outcomes = []
    for ordinal, q in enumerate(questions):
        stem_vec = vectors[q.stem.key()]
        cosines = score_choices(stem_vec, [vectors[c.key()] for c in q.choices])
        rng = question_rng(seed, ordinal) if tie_break == "random" else None
        outcomes.append(decide(cosines, threshold, stem_vec.is_zero(), rng))
    return outcomes


@dataclass
class EvalReport:
    correct: int
    incorrect: int
    skipped: int
    guesses_made: int
    total: int
    precision: float = field(init=False)
    recall: float = field(init=False)
    f: float = field(init=False)

    def __post_init__(self):
        self.precision = _ratio(self.correct, self.guesses_made)
        self.recall = _ratio(self.correct, self.total)
        self.f = f_measure(self.precision, self.recall)


def _ratio(num: int, den: int) -> float:
    return num / den if den else 0.0


def f_measure(precision: float, recall: float) -> float:
    """Harmonic mean; 0 when the denominator is 0."""
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def evaluate(questions: Sequence[AnalogyQuestion],
             outcomes: Sequence[GuessOutcome]) -> EvalReport:
    """A question is correct if its answer is among the guesses; every
    guessed index counts as one guess."""
    if len(questions) != len(outcomes):
        raise ValueError("one outcome per question required")
    correct = incorrect = skipped = guesses_made = 0
    for q, out in zip(questions, outcomes):
        guesses_made += len(out.guesses)
        if not out.guesses:
            skipped += 1
        elif q.answer in out.guesses:
            correct += 1
        else:
            incorrect += 1
    return EvalReport(correct, incorrect, skipped, guesses_made, len(questions))


def raw_sat_score(correct: int, incorrect: int) -> float:
    """One point per correct answer, minus a quarter point per incorrect;
    skips contribute nothing."""
    if correct < 0 or incorrect < 0:
        raise ValueError("counts must be non-negative")
    return correct - incorrect / 4


def rank_pool(stem_vec: RelationVector,
              pool: Sequence[RelationVector]) -> list[int]:
    """Pool indices sorted by descending cosine to the stem; ties broken by
    ascending pool index."""
    if not pool:
        raise ValueError("pool must be non-empty")
    scores = [cosine(stem_vec, v) for v in pool]
    return ranked_indices(scores)


def rank_of(ranking: Sequence[int], target: int) -> int:
    """1-based rank of a pool index in a ranking."""
    return ranking.index(target) + 1


@dataclass
class TopKRow:
    k: int
    matches: int
    cumulative: int
    cumulative_pct: float


def cumulative_top_k(ranks: Sequence[int], k_max: int = 10) -> list[TopKRow]:
    """How many questions' correct pairs rank at or below each k."""
    rows = []
    cumulative = 0
    total = len(ranks)
    for k in range(1, k_max + 1):
        matches = sum(1 for r in ranks if r == k)
        cumulative += matches
        rows.append(TopKRow(k, matches, cumulative, _ratio(cumulative, total)))
    return rows


# ---------------------------------------------------------------------------
# Question file parsing

def parse_pair(text: str) -> WordPair:
    parts = text.strip().split(":")
    if len(parts) != 2 or not parts[0] or not parts[1]:
        raise DataFormatError(f"bad word pair {text!r}, expected 'x:y'")
    return WordPair(parts[0].lower(), parts[1].lower())


def load_questions(path: str | Path) -> list[AnalogyQuestion]:
    """TSV: stem pair, five (or more) choice pairs, answer letter.

    Pairs are "x:y" with underscores for multiword members; lines starting
    with '#' are comments.
    """
    questions = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.rstrip("\n").split("\t")
        if len(fields) < 4:
            raise DataFormatError(f"{path}:{lineno}: expected stem, choices, answer")
        letter = fields[-1].strip().lower()
        if letter not in CHOICE_LETTERS:
            raise DataFormatError(f"{path}:{lineno}: bad answer letter {fields[-1]!r}")
        try:
            stem_pair = parse_pair(fields[0])
            choices = tuple(parse_pair(f) for f in fields[1:-1])
            questions.append(AnalogyQuestion(stem_pair, choices, CHOICE_LETTERS.index(letter)))
        except (DataFormatError, ValueError) as e:
            raise DataFormatError(f"{path}:{lineno}: {e}") from e
    return questions
