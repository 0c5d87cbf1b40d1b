"""Domain-theory predicates over a single hand, the L0/L1/L2 vocabularies,
and the 54-column flat encoding used by attribute-value learners."""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass
from itertools import combinations_with_replacement
from pathlib import Path
from typing import Iterable, NamedTuple

from .cards import Hand, Suit, Vulnerability
from .records import Label, LabeledExample

HCP_VALUES = {14: 4, 13: 3, 12: 2, 11: 1}


def hcp(hand: Hand) -> int:
    return sum(HCP_VALUES.get(r, 0) for s in Suit for r in hand.ranks(s))


def nb(hand: Hand, suit: Suit) -> int:
    return hand.suit_mask(suit).bit_count()


def nbs(hand: Hand) -> int:
    return nb(hand, Suit.SPADE)


def suit_lengths(hand: Hand) -> tuple[int, int, int, int]:
    """Lengths indexed club, diamond, heart, spade."""
    return tuple(nb(hand, s) for s in Suit)


def distribution(hand: Hand) -> tuple[int, ...]:
    """Suit lengths sorted in decreasing order, e.g. ``(5, 3, 3, 2)``."""
    return tuple(sorted(suit_lengths(hand), reverse=True))


# Every pattern a 13-card hand can have, in a fixed order (used as integer codes).
DISTRIBUTIONS: tuple[tuple[int, ...], ...] = tuple(
    sorted(
        (
            tuple(sorted(p, reverse=True))
            for p in combinations_with_replacement(range(14), 4)
            if sum(p) == 13
        ),
        reverse=True,
    )
)
DISTRIBUTION_CODE = {p: i for i, p in enumerate(DISTRIBUTIONS)}


class SuitRepresentation(NamedTuple):
    honors: tuple[int, ...]
    count: int


def suit_representation(hand: Hand, suit: Suit) -> SuitRepresentation:
    """Honors strictly above the ten, highest first, plus the suit length."""
    ranks = hand.ranks(suit)
    return SuitRepresentation(tuple(r for r in ranks if r > 10), len(ranks))


class BalanceClass(enum.Enum):
    BALANCED = "balanced"
    SEMIBALANCED = "semibalanced"
    UNBALANCED = "unbalanced"


BALANCED_SHAPES = frozenset({(4, 3, 3, 3), (4, 4, 3, 2), (5, 3, 3, 2)})
SEMIBALANCED_SHAPES = frozenset({(5, 4, 2, 2), (6, 3, 2, 2)})


def balance_class_of(pattern: tuple[int, ...]) -> BalanceClass:
    if pattern in BALANCED_SHAPES:
        return BalanceClass.BALANCED
    if pattern in SEMIBALANCED_SHAPES:
        return BalanceClass.SEMIBALANCED
    return BalanceClass.UNBALANCED


def balance_class(hand: Hand) -> BalanceClass:
    return balance_class_of(distribution(hand))


def longest_suit(hand: Hand) -> Suit:
    # ties go to the higher-ranked suit
    return max(Suit, key=lambda s: (nb(hand, s), s))


def shortest_suit(hand: Hand) -> Suit:
    return min(Suit, key=lambda s: (nb(hand, s), -s))


def major(suit: Suit) -> bool:
    return suit in (Suit.HEART, Suit.SPADE)


def minor(suit: Suit) -> bool:
    return suit in (Suit.CLUB, Suit.DIAMOND)


def gteq(a: int, b: int) -> bool:
    return a >= b


def lteq(a: int, b: int) -> bool:
    return a <= b


def vuln(vul: Vulnerability) -> tuple[bool, bool]:
    """(north-south vulnerable, east-west vulnerable)."""
    return vul.ns_vulnerable, vul.ew_vulnerable


class LanguageId(enum.Enum):
    L0 = "L0"
    L1 = "L1"
    L2 = "L2"


_L0 = frozenset(
    {
        "suit_representation", "distribution", "nb", "hcp", "semibalanced",
        "unbalanced", "balanced", "vuln", "lteq", "gteq", "longest_suit",
        "shortest_suit", "major", "minor",
    }
)
LANGUAGE_PREDICATES: dict[LanguageId, frozenset[str]] = {
    LanguageId.L0: _L0,
    LanguageId.L1: _L0 - {"suit_representation", "distribution"},
    LanguageId.L2: frozenset({"distribution", "nb", "hcp", "lteq", "gteq", "nbs"}),
}


# ---------------------------------------------------------------------------
# flat encoding

VUL_CODES = {Vulnerability.NONE: 0, Vulnerability.NS: 1, Vulnerability.EW: 2, Vulnerability.BOTH: 3}
CLASS_CODES = {Label.PASS: 0, Label.BID: 1}

FLAT_HEADER: tuple[str, ...] = ("vulnerability", "class") + tuple(
    f"{s.word}_{i}" for s in Suit for i in range(1, 14)
)


def flat_encode(example: LabeledExample) -> list[int]:
    """54 integers: vulnerability, class, then 13 rank slots per suit
    (clubs to spades), highest card first and zero padded."""
    row = [VUL_CODES[example.vul], CLASS_CODES[example.label]]
    for s in Suit:
        ranks = example.south.ranks(s)
        row.extend(ranks + [0] * (13 - len(ranks)))
    return row


def write_flat_csv(path: str | Path, examples: Iterable[LabeledExample]) -> None:
    with open(path, "w", newline="", encoding="ascii") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(FLAT_HEADER)
        for e in examples:
            w.writerow(flat_encode(e))


@dataclass(frozen=True)
class HandFacts:
    """All predicate values of one hand, computed once."""

    hcp: int
    lengths: tuple[int, int, int, int]
    distribution: tuple[int, ...]
    honors: tuple[tuple[int, ...], ...]
    balance: BalanceClass
    longest: Suit
    shortest: Suit

    @classmethod
    def of(cls, hand: Hand) -> "HandFacts":
        return cls(
            hcp(hand),
            suit_lengths(hand),
            distribution(hand),
            tuple(suit_representation(hand, s).honors for s in Suit),
            balance_class(hand),
            longest_suit(hand),
            shortest_suit(hand),
        )


def _term(value) -> str:
    if isinstance(value, Suit):
        return value.word
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, tuple):
        return "[" + ",".join(_term(v) for v in value) + "]"
    return str(value)


def hand_facts_text(hand: Hand) -> list[str]:
    """Ground background facts for a hand, in relational syntax."""
    h = "[" + ",".join(hand.atoms()) + "]"
    f = HandFacts.of(hand)
    honor_names = {14: "a", 13: "k", 12: "q", 11: "j"}
    out = [f"hcp({h},{f.hcp}).", f"nbs({h},{f.lengths[Suit.SPADE]})."]
    out.append(f"distribution({h},{_term(f.distribution)}).")
    for s in reversed(Suit):
        out.append(f"nb({h},{s.word},{f.lengths[s]}).")
    for s in reversed(Suit):
        hon = "[" + ",".join(honor_names[r] for r in f.honors[s]) + "]"
        out.append(f"suit_representation({h},{s.word},{hon},{f.lengths[s]}).")
    out.append(f"{f.balance.value}({h}).")
    out.append(f"longest_suit({h},{f.longest.word}).")
    out.append(f"shortest_suit({h},{f.shortest.word}).")
    return out
