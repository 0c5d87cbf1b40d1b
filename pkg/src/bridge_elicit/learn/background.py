"""Background predicates as relations over a set of examples.

Every predicate is functional once its hand (or vulnerability) argument
and, where present, its suit argument are fixed, so coverage can be
computed with array indexing rather than general joins. Values are
encoded as small integers inside the arrays; literals carry readable
constants (``spade``, ``[6,4,2,1]``, ``[a,k]``, ``yes``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..cards import Hand, Suit, Vulnerability
from ..predicates import (
    DISTRIBUTION_CODE,
    DISTRIBUTIONS,
    BalanceClass,
    balance_class,
    distribution,
    hcp,
    longest_suit,
    shortest_suit,
    suit_lengths,
    suit_representation,
)
from ..records import LabeledExample

# -- value types -------------------------------------------------------------

HAND, VUL, SUIT, INT, DIST, HONORS, BOOL = "hand", "vul", "suit", "int", "dist", "honors", "bool"

SUIT_ATOMS = tuple(s.word for s in Suit)
_HONOR_ATOMS = {14: "a", 13: "k", 12: "q", 11: "j"}
_HONOR_BITS = {"a": 8, "k": 4, "q": 2, "j": 1}


def encode(vtype: str, value) -> int:
    """Readable constant -> array code."""
    if vtype == SUIT:
        return SUIT_ATOMS.index(value)
    if vtype == DIST:
        return DISTRIBUTION_CODE[tuple(value)]
    if vtype == HONORS:
        return sum(_HONOR_BITS[h] for h in value)
    if vtype == BOOL:
        return 1 if value == "yes" else 0
    return int(value)


def decode(vtype: str, code: int):
    code = int(code)
    if vtype == SUIT:
        return SUIT_ATOMS[code]
    if vtype == DIST:
        return DISTRIBUTIONS[code]
    if vtype == HONORS:
        return tuple(a for a in "akqj" if code & _HONOR_BITS[a])
    if vtype == BOOL:
        return "yes" if code else "no"
    return code


def honors_code(hand: Hand, suit: Suit) -> int:
    return encode(HONORS, tuple(_HONOR_ATOMS[r] for r in suit_representation(hand, suit).honors))


# -- example arrays ----------------------------------------------------------

_BALANCE_CODE = {BalanceClass.BALANCED: 0, BalanceClass.SEMIBALANCED: 1, BalanceClass.UNBALANCED: 2}


@dataclass
class Facts:
    """Feature arrays for ``n`` examples."""

    hcp: np.ndarray  # (n,)
    lengths: np.ndarray  # (n, 4)
    dist: np.ndarray  # (n,)
    honors: np.ndarray  # (n, 4)
    balance: np.ndarray  # (n,)
    longest: np.ndarray  # (n,)
    shortest: np.ndarray  # (n,)
    ns_vul: np.ndarray  # (n,)
    ew_vul: np.ndarray  # (n,)
    positive: np.ndarray  # (n,) bool

    def __len__(self) -> int:
        return len(self.hcp)

    @classmethod
    def from_hands(cls, hands: Sequence[Hand], vuls: Sequence[Vulnerability],
                   positive: Sequence[bool] | None = None) -> "Facts":
        n = len(hands)
        lengths = np.array([suit_lengths(h) for h in hands], dtype=np.int16).reshape(n, 4)
        return cls(
            hcp=np.array([hcp(h) for h in hands], dtype=np.int16),
            lengths=lengths,
            dist=np.array([DISTRIBUTION_CODE[distribution(h)] for h in hands], dtype=np.int16),
            honors=np.array([[honors_code(h, s) for s in Suit] for h in hands], dtype=np.int16).reshape(n, 4),
            balance=np.array([_BALANCE_CODE[balance_class(h)] for h in hands], dtype=np.int16),
            longest=np.array([int(longest_suit(h)) for h in hands], dtype=np.int16),
            shortest=np.array([int(shortest_suit(h)) for h in hands], dtype=np.int16),
            ns_vul=np.array([v.ns_vulnerable for v in vuls], dtype=np.int16),
            ew_vul=np.array([v.ew_vulnerable for v in vuls], dtype=np.int16),
            positive=np.zeros(n, bool) if positive is None else np.asarray(positive, dtype=bool),
        )

    @classmethod
    def from_examples(cls, examples: Sequence[LabeledExample]) -> "Facts":
        return cls.from_hands([e.south for e in examples], [e.vul for e in examples],
                              [e.is_positive for e in examples])

    def take(self, rows) -> "Facts":
        return Facts(**{k: v[rows] for k, v in self.__dict__.items()})


# -- predicate schemas -------------------------------------------------------


@dataclass(frozen=True)
class PredicateDef:
    """``kind`` is one of:

    * ``"fn"``: the first argument is the hand (or vulnerability); the rest
      are values computed per example.
    * ``"suit_fn"``: hand, suit, then values computed per (example, suit).
    * ``"flag"``: a single hand argument; true or false per example.
    * ``"test"``: a builtin over already-bound values.
    """

    name: str
    types: tuple[str, ...]
    kind: str


PREDICATES: dict[str, PredicateDef] = {
    p.name: p
    for p in (
        PredicateDef("hcp", (HAND, INT), "fn"),
        PredicateDef("nbs", (HAND, INT), "fn"),
        PredicateDef("nb", (HAND, SUIT, INT), "suit_fn"),
        PredicateDef("distribution", (HAND, DIST), "fn"),
        PredicateDef("suit_representation", (HAND, SUIT, HONORS, INT), "suit_fn"),
        PredicateDef("balanced", (HAND,), "flag"),
        PredicateDef("semibalanced", (HAND,), "flag"),
        PredicateDef("unbalanced", (HAND,), "flag"),
        PredicateDef("longest_suit", (HAND, SUIT), "fn"),
        PredicateDef("shortest_suit", (HAND, SUIT), "fn"),
        PredicateDef("vuln", (VUL, BOOL, BOOL), "fn"),
        PredicateDef("major", (SUIT,), "test"),
        PredicateDef("minor", (SUIT,), "test"),
        PredicateDef("gteq", (INT, INT), "test"),
        PredicateDef("lteq", (INT, INT), "test"),
    )
}


def fn_columns(pred: str, facts: Facts, ex: np.ndarray) -> tuple[np.ndarray, ...]:
    """Values of the non-hand arguments of a ``fn`` predicate."""
    if pred == "hcp":
        return (facts.hcp[ex],)
    if pred == "nbs":
        return (facts.lengths[ex, 3],)
    if pred == "distribution":
        return (facts.dist[ex],)
    if pred == "longest_suit":
        return (facts.longest[ex],)
    if pred == "shortest_suit":
        return (facts.shortest[ex],)
    if pred == "vuln":
        return (facts.ns_vul[ex], facts.ew_vul[ex])
    raise KeyError(pred)


def suit_fn_columns(pred: str, facts: Facts, ex: np.ndarray, suit: np.ndarray) -> tuple[np.ndarray, ...]:
    if pred == "nb":
        return (facts.lengths[ex, suit],)
    if pred == "suit_representation":
        return (facts.honors[ex, suit], facts.lengths[ex, suit])
    raise KeyError(pred)


def flag_mask(pred: str, facts: Facts, ex: np.ndarray) -> np.ndarray:
    code = {"balanced": 0, "semibalanced": 1, "unbalanced": 2}[pred]
    return facts.balance[ex] == code


def test_mask(pred: str, values: Sequence[np.ndarray]) -> np.ndarray:
    if pred == "gteq":
        return values[0] >= values[1]
    if pred == "lteq":
        return values[0] <= values[1]
    if pred == "major":
        return values[0] >= 2
    if pred == "minor":
        return values[0] <= 1
    raise KeyError(pred)
