"""Labeled learning instances for the South decision after 4S-Double-Pass."""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .cards import Hand, Seat, Vulnerability, parse_hand

POSITION = 4
DEALER = Seat.WEST


class Label(enum.Enum):
    BID = "bid"
    PASS = "pass"
    UNKNOWN = "?"


@dataclass(frozen=True)
class LabeledExample:
    """Mirrors ``decision(Hand, 4, Vul, west, Class)``."""

    south: Hand
    vul: Vulnerability
    label: Label
    source: str = ""

    @property
    def position(self) -> int:
        return POSITION

    @property
    def dealer(self) -> Seat:
        return DEALER

    @property
    def is_positive(self) -> bool:
        return self.label is Label.BID

    def fact(self) -> str:
        hand = "[" + ",".join(self.south.atoms()) + "]"
        return f"decision({hand},{POSITION},{self.vul.code},west,{self.label.value})."


@dataclass
class Dataset:
    """Examples with a definite label, in a fixed order."""

    examples: list[LabeledExample] = field(default_factory=list)

    def __post_init__(self) -> None:
        if any(e.label is Label.UNKNOWN for e in self.examples):
            raise ValueError("a Dataset holds only bid/pass examples")

    def __len__(self) -> int:
        return len(self.examples)

    def __iter__(self) -> Iterator[LabeledExample]:
        return iter(self.examples)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Dataset(self.examples[i])
        return self.examples[i]

    def subset(self, indices: Iterable[int]) -> "Dataset":
        return Dataset([self.examples[i] for i in indices])

    @property
    def n_bid(self) -> int:
        return sum(e.label is Label.BID for e in self.examples)

    @property
    def bid_ratio(self) -> float:
        return self.n_bid / len(self) if self.examples else 0.0


DATASET_COLUMNS = ("south_hand", "vulnerability", "label", "source_file")


def write_dataset_csv(path: str | Path, dataset: Iterable[LabeledExample]) -> None:
    with open(path, "w", newline="", encoding="ascii") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(DATASET_COLUMNS)
        for e in dataset:
            w.writerow([e.south.to_text(), e.vul.code, e.label.value, e.source])


def read_dataset_csv(path: str | Path) -> Dataset:
    with open(path, newline="", encoding="ascii") as fh:
        rows = list(csv.DictReader(fh))
    return Dataset(
        [
            LabeledExample(
                parse_hand(r["south_hand"]),
                Vulnerability.from_text(r["vulnerability"]),
                Label(r["label"]),
                r.get("source_file", ""),
            )
            for r in rows
            if r["label"] != Label.UNKNOWN.value
        ]
    )
