"""Bid/pass labels for a South hand from the score tables of its sample file.

Step 1 compares defending 4SX against the best NS result board by board:
if defending beats even that per-board oracle on average, South passes.
Step 2 looks for one fixed NS contract that does better than defending
on average; clearly worse by ``threshold`` points means pass, and the band
in between is left unknown.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .dds.table import ScoreTable
from .dealgen import SampleFile
from .predicates import hand_facts_text
from .records import Dataset, Label, LabeledExample

DEFAULT_THRESHOLD = 30


class LabelingError(ValueError):
    pass


@dataclass(frozen=True)
class LabelDecision:
    label: Label
    s_def: float
    s_oracle: float
    best_contract: str  # e.g. "4H"
    best_mean: float


def _mean(xs: Sequence[float]) -> float:
    return sum(xs) / len(xs)


def label_tables(tables: Sequence[ScoreTable], threshold: float = DEFAULT_THRESHOLD) -> LabelDecision:
    if not tables:
        raise LabelingError("no boards to label")
    s_def = _mean([t.defended.ns_score for t in tables])
    s_oracle = _mean([t.best_ns for t in tables])

    per_contract: dict[str, list[int]] = {}
    for t in tables:
        for e in t.ns_entries:
            per_contract.setdefault(f"{e.contract.level}{e.contract.strain.letter}", []).append(e.ns_score)
    lengths = {len(v) for v in per_contract.values()}
    if lengths != {len(tables)}:
        raise LabelingError("score tables do not list the same NS contracts")
    means = {c: _mean(v) for c, v in per_contract.items()}
    # highest mean; ties go to the cheaper contract (first in table order)
    best = max(means, key=lambda c: means[c])
    best_mean = means[best]

    if s_def > s_oracle:
        label = Label.PASS
    elif best_mean > s_def:
        label = Label.BID
    elif best_mean <= s_def - threshold:
        label = Label.PASS
    else:
        label = Label.UNKNOWN
    return LabelDecision(label, s_def, s_oracle, best, best_mean)


def label_south(file: SampleFile, tables: Sequence[ScoreTable],
                threshold: float = DEFAULT_THRESHOLD) -> Label:
    if not file.boards:
        raise LabelingError("empty sample file")
    if len(tables) != len(file.boards):
        raise LabelingError(f"{len(file.boards)} boards but {len(tables)} score tables")
    return label_tables(tables, threshold).label


@dataclass
class LabelSummary:
    counts: Counter

    @property
    def kept(self) -> int:
        return self.counts[Label.BID] + self.counts[Label.PASS]

    @property
    def bid_ratio(self) -> float:
        return self.counts[Label.BID] / self.kept if self.kept else 0.0

    def as_dict(self) -> dict[str, int]:
        return {lab.value: self.counts[lab] for lab in Label}


def build_dataset(files: Sequence[SampleFile], tables: Sequence[Sequence[ScoreTable]],
                  threshold: float = DEFAULT_THRESHOLD) -> tuple[Dataset, LabelSummary]:
    """Label every file and drop the unknowns."""
    if len(files) != len(tables):
        raise LabelingError(f"{len(files)} files but {len(tables)} table lists")
    counts: Counter = Counter({lab: 0 for lab in Label})
    kept = []
    for f, ts in zip(files, tables):
        label = label_south(f, ts, threshold)
        counts[label] += 1
        if label is not Label.UNKNOWN:
            kept.append(LabeledExample(f.south, f.vulnerability, label, f.name))
    return Dataset(kept), LabelSummary(counts)


def write_facts(path: str | Path, examples: Iterable[LabeledExample]) -> None:
    """Relational fact file: one decision/5 fact per example followed by
    the background facts of each distinct hand."""
    examples = list(examples)
    lines = [e.fact() for e in examples]
    seen = set()
    for e in examples:
        if e.south.mask not in seen:
            seen.add(e.south.mask)
            lines.extend(hand_facts_text(e.south))
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")
