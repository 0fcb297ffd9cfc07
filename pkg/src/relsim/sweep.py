"""Threshold sweeps over the margin, emitting precision/recall/F rows."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .analogy import AnalogyQuestion, evaluate, solve_all
from .nounmod import loocv, macroaverage
from .vectors import RelationVector


@dataclass
class SweepRow:
    threshold: float
    precision: float
    recall: float
    f: float
    guesses: int
    skipped: int
    doubles: int


CSV_HEADER = "threshold,precision,recall,f,guesses,skipped,doubles"

SAT_GRID = (-0.11, 0.11, 0.01)
NOUNMOD_GRID = (-0.03, 0.03, 0.01)


def grid_thresholds(lo: float, hi: float, step: float) -> list[float]:
    n = round((hi - lo) / step)
    return [round(lo + i * step, 10) for i in range(n + 1)]


def sat_sweep(questions: Sequence[AnalogyQuestion],
              vectors: dict[str, RelationVector],
              thresholds: Sequence[float], seed: int = 0,
              tie_break: str = "random") -> list[SweepRow]:
    rows = []
    for t in thresholds:
        outcomes = solve_all(questions, vectors, t, seed, tie_break)
        report = evaluate(questions, outcomes)
        doubles = sum(1 for o in outcomes if len(o.guesses) == 2)
        rows.append(SweepRow(t, report.precision, report.recall, report.f,
                             report.guesses_made, report.skipped, doubles))
    return rows


def nounmod_sweep(vectors: Sequence[RelationVector], labels: Sequence[str],
                  thresholds: Sequence[float], granularity: int = 30,
                  seed: int = 0, tie_break: str = "random") -> list[SweepRow]:
    rows = []
    for t in thresholds:
        result = loocv(vectors, labels, t, granularity, seed, tie_break=tie_break)
        p, r, f = macroaverage(result.per_class)
        rows.append(SweepRow(t, p, r, f, result.guesses_made,
                             result.abstained, result.doubles))
    return rows


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    lines = [CSV_HEADER]
    for row in rows:
        lines.append(f"{row.threshold},{row.precision!r},{row.recall!r},"
                     f"{row.f!r},{row.guesses},{row.skipped},{row.doubles}")
    return "\n".join(lines) + "\n"
