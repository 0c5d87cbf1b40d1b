"""Cards, hands, deals, vulnerability and contracts.

Hands use the dotted suit-major notation ``spades.hearts.diamonds.clubs``
(``"AKJ8752.7.J863.5"``), and a deal serializes to a single line::

    n N:6.AQ93.KQT42.A94 E:T3.J84.A7.QJ8762 S:Q94.KT652.95.KT3 W:AKJ8752.7.J863.5

Internally a hand is a 52-bit integer: bit ``suit * 13 + (rank - 2)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence


class ParseError(ValueError):
    """Raised for malformed card, hand, deal or contract text."""


class Suit(enum.IntEnum):
    CLUB = 0
    DIAMOND = 1
    HEART = 2
    SPADE = 3

    @property
    def letter(self) -> str:
        return "cdhs"[self]

    @property
    def word(self) -> str:
        return self.name.lower()

    @classmethod
    def from_text(cls, text: str) -> "Suit":
        key = text.strip().lower()
        for suit in cls:
            if key in (suit.letter, suit.word, suit.word + "s"):
                return suit
        raise ParseError(f"unknown suit {text!r}")


class Strain(enum.IntEnum):
    CLUB = 0
    DIAMOND = 1
    HEART = 2
    SPADE = 3
    NOTRUMP = 4

    @property
    def letter(self) -> str:
        return "CDHSN"[self]

    @property
    def is_minor(self) -> bool:
        return self in (Strain.CLUB, Strain.DIAMOND)

    @property
    def suit(self) -> Suit | None:
        return None if self is Strain.NOTRUMP else Suit(int(self))

    @classmethod
    def from_text(cls, text: str) -> "Strain":
        key = text.strip().upper()
        if key in ("N", "NT", "NOTRUMP", "NOTRUMPS"):
            return cls.NOTRUMP
        return cls(int(Suit.from_text(key)))


class Seat(enum.IntEnum):
    NORTH = 0
    EAST = 1
    SOUTH = 2
    WEST = 3

    @property
    def letter(self) -> str:
        return "NESW"[self]

    @property
    def next(self) -> "Seat":
        return Seat((self + 1) % 4)

    @property
    def partner(self) -> "Seat":
        return Seat((self + 2) % 4)

    @property
    def is_ns(self) -> bool:
        return self in (Seat.NORTH, Seat.SOUTH)

    @classmethod
    def from_text(cls, text: str) -> "Seat":
        key = text.strip().upper()
        for seat in cls:
            if key in (seat.letter, seat.name):
                return seat
        raise ParseError(f"unknown seat {text!r}")


class Vulnerability(enum.Enum):
    BOTH = "b"
    NONE = "o"
    NS = "n"
    EW = "e"

    @property
    def code(self) -> str:
        return self.value

    @property
    def ns_vulnerable(self) -> bool:
        return self in (Vulnerability.BOTH, Vulnerability.NS)

    @property
    def ew_vulnerable(self) -> bool:
        return self in (Vulnerability.BOTH, Vulnerability.EW)

    def side_vulnerable(self, seat: Seat) -> bool:
        return self.ns_vulnerable if seat.is_ns else self.ew_vulnerable

    @classmethod
    def from_text(cls, text: str) -> "Vulnerability":
        key = text.strip().lower()
        aliases = {"none": "o", "both": "b", "ns": "n", "ew": "e", "all": "b", "-": "o"}
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise ParseError(f"unknown vulnerability {text!r}") from None


class Doubling(enum.IntEnum):
    UNDOUBLED = 0
    DOUBLED = 1
    REDOUBLED = 2


RANK_CHARS = {14: "A", 13: "K", 12: "Q", 11: "J", 10: "T"}
_CHAR_RANKS = {"A": 14, "K": 13, "Q": 12, "J": 11, "T": 10}
_CHAR_RANKS.update({str(r): r for r in range(2, 10)})


def rank_char(rank: int) -> str:
    return RANK_CHARS.get(rank, str(rank))


@dataclass(frozen=True, order=True)
class Card:
    """A playing card; orders by suit (clubs lowest) then rank."""

    suit: Suit
    rank: int

    def __post_init__(self) -> None:
        if not 2 <= self.rank <= 14:
            raise ValueError(f"rank out of range: {self.rank}")
        object.__setattr__(self, "suit", Suit(self.suit))

    @property
    def index(self) -> int:
        return self.suit * 13 + self.rank - 2

    @classmethod
    def from_index(cls, index: int) -> "Card":
        return cls(Suit(index // 13), index % 13 + 2)

    @classmethod
    def parse(cls, text: str) -> "Card":
        """Parse ``"SA"``, ``"H10"`` or the lower-case atom form ``"h10"``."""
        text = text.strip()
        if len(text) < 2:
            raise ParseError(f"bad card {text!r}")
        suit = Suit.from_text(text[0])
        rank = _CHAR_RANKS.get(text[1:].upper()) or (10 if text[1:] == "10" else None)
        if rank is None:
            raise ParseError(f"bad card {text!r}")
        return cls(suit, rank)

    def atom(self) -> str:
        """Lower-case atom used in relational facts, e.g. ``hk`` or ``h10``."""
        r = "10" if self.rank == 10 else rank_char(self.rank).lower()
        return self.suit.letter + r

    def __str__(self) -> str:
        return self.suit.letter.upper() + rank_char(self.rank)


FULL_DECK_MASK = (1 << 52) - 1
_SUIT_MASK = (1 << 13) - 1


class Hand:
    """Thirteen distinct cards. Immutable; equality and hashing by card set."""

    __slots__ = ("_mask",)

    def __init__(self, cards: Iterable[Card] | int):
        if isinstance(cards, int):
            mask = cards
        else:
            mask = 0
            n = 0
            for card in cards:
                mask |= 1 << card.index
                n += 1
            if n != mask.bit_count():
                raise ParseError("duplicate card in hand")
        if mask.bit_count() != 13 or mask & ~FULL_DECK_MASK:
            raise ParseError(f"a hand needs exactly 13 cards, got {mask.bit_count()}")
        object.__setattr__(self, "_mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("Hand is immutable")

    @property
    def mask(self) -> int:
        return self._mask

    def suit_mask(self, suit: Suit) -> int:
        """Ranks held in ``suit`` as a 13-bit mask (bit 0 = deuce)."""
        return (self._mask >> (13 * suit)) & _SUIT_MASK

    def ranks(self, suit: Suit) -> list[int]:
        """Ranks held in ``suit``, highest first."""
        m = self.suit_mask(suit)
        return [r + 2 for r in range(12, -1, -1) if m >> r & 1]

    @property
    def cards(self) -> list[Card]:
        return [Card.from_index(i) for i in range(52) if self._mask >> i & 1]

    def __iter__(self) -> Iterator[Card]:
        return iter(self.cards)

    def __len__(self) -> int:
        return 13

    def __contains__(self, card: Card) -> bool:
        return bool(self._mask >> card.index & 1)

    def __eq__(self, other) -> bool:
        return isinstance(other, Hand) and other._mask == self._mask

    def __hash__(self) -> int:
        return hash(self._mask)

    def to_text(self) -> str:
        return ".".join(
            "".join(rank_char(r) for r in self.ranks(s)) for s in reversed(Suit)
        )

    def atoms(self) -> list[str]:
        """Cards as relational atoms, spades first, descending: ``[sq, s9, ...]``."""
        return [Card(s, r).atom() for s in reversed(Suit) for r in self.ranks(s)]

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Hand({self.to_text()!r})"


def parse_cards(text: str) -> list[Card]:
    """Cards in dotted suit-major notation; ``T`` and ``10`` both mean ten."""
    groups = text.strip().split(".")
    if len(groups) != 4:
        raise ParseError(f"expected 4 suit groups in {text!r}")
    cards = []
    for suit, group in zip(reversed(Suit), groups):
        i = 0
        while i < len(group):
            if group.startswith("10", i):
                rank, i = 10, i + 2
            else:
                rank = _CHAR_RANKS.get(group[i].upper())
                if rank is None:
                    raise ParseError(f"unknown rank character {group[i]!r} in {text!r}")
                i += 1
            cards.append(Card(suit, rank))
    if len(set(cards)) != len(cards):
        raise ParseError(f"duplicate card in {text!r}")
    return cards


def parse_hand(text: str) -> Hand:
    """A full 13-card hand in dotted notation."""
    cards = parse_cards(text)
    if len(cards) != 13:
        raise ParseError(f"a hand needs exactly 13 cards, got {len(cards)} in {text!r}")
    return Hand(cards)


@dataclass(frozen=True)
class Deal:
    """Four hands partitioning the deck. Dealer is West throughout this problem."""

    north: Hand
    east: Hand
    south: Hand
    west: Hand
    vulnerability: Vulnerability = Vulnerability.NONE
    dealer: Seat = Seat.WEST

    def __post_init__(self) -> None:
        masks = [h.mask for h in self.hands]
        union = 0
        for m in masks:
            if union & m:
                raise ParseError("hands overlap")
            union |= m
        if union != FULL_DECK_MASK:
            raise ParseError("hands do not cover the deck")

    @property
    def hands(self) -> tuple[Hand, Hand, Hand, Hand]:
        return (self.north, self.east, self.south, self.west)

    def __getitem__(self, seat: Seat) -> Hand:
        return self.hands[seat]

    def with_vulnerability(self, vul: Vulnerability) -> "Deal":
        return Deal(self.north, self.east, self.south, self.west, vul, self.dealer)


def make_deal(n: Hand, e: Hand, s: Hand, w: Hand, vul: Vulnerability) -> Deal:
    return Deal(n, e, s, w, vul, Seat.WEST)


def deal_from_masks(masks: Sequence[int], vul: Vulnerability) -> Deal:
    return Deal(*(Hand(int(m)) for m in masks), vulnerability=vul)


def serialize_deal(deal: Deal) -> str:
    parts = [f"{seat.letter}:{deal[seat].to_text()}" for seat in Seat]
    return f"{deal.vulnerability.code} " + " ".join(parts)


def parse_deal(line: str) -> Deal:
    fields = line.split()
    if len(fields) != 5:
        raise ParseError(f"expected '<vul> N:.. E:.. S:.. W:..', got {line!r}")
    vul = Vulnerability.from_text(fields[0])
    hands: dict[Seat, Hand] = {}
    for field in fields[1:]:
        seat_text, _, hand_text = field.partition(":")
        seat = Seat.from_text(seat_text)
        if seat in hands:
            raise ParseError(f"seat {seat.letter} given twice")
        hands[seat] = parse_hand(hand_text)
    return Deal(hands[Seat.NORTH], hands[Seat.EAST], hands[Seat.SOUTH], hands[Seat.WEST], vul)


def parse_position(line: str) -> tuple[Vulnerability, list[list[Card]]]:
    """Like ``parse_deal`` but for endings: equal-size hands, any length."""
    fields = line.split()
    if len(fields) != 5:
        raise ParseError(f"expected '<vul> N:.. E:.. S:.. W:..', got {line!r}")
    vul = Vulnerability.from_text(fields[0])
    hands: dict[Seat, list[Card]] = {}
    for field in fields[1:]:
        seat_text, _, hand_text = field.partition(":")
        seat = Seat.from_text(seat_text)
        if seat in hands:
            raise ParseError(f"seat {seat.letter} given twice")
        hands[seat] = parse_cards(hand_text)
    if len(hands) != 4:
        raise ParseError(f"all four seats are needed in {line!r}")
    return vul, [hands[s] for s in Seat]


def read_deals(path: str | Path) -> list[Deal]:
    """Read a deal file: one deal per line, ``#`` comments and blanks ignored."""
    deals = []
    with open(path, encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                deals.append(parse_deal(line))
    return deals


def write_deals(path: str | Path, deals: Iterable[Deal], comments: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for c in comments:
            fh.write(f"# {c}\n")
        for d in deals:
            fh.write(serialize_deal(d) + "\n")


@dataclass(frozen=True)
class Contract:
    level: int
    strain: Strain
    doubling: Doubling = Doubling.UNDOUBLED
    declarer: Seat = Seat.NORTH

    def __post_init__(self) -> None:
        if not 1 <= self.level <= 7:
            raise ValueError(f"contract level out of range: {self.level}")
        object.__setattr__(self, "strain", Strain(self.strain))
        object.__setattr__(self, "doubling", Doubling(self.doubling))
        object.__setattr__(self, "declarer", Seat(self.declarer))

    @property
    def tricks_required(self) -> int:
        return self.level + 6

    @property
    def name(self) -> str:
        return f"{self.level}{self.strain.letter}" + "X" * self.doubling

    def __str__(self) -> str:
        return f"{self.name}-{self.declarer.letter}"

    @classmethod
    def parse(cls, text: str) -> "Contract":
        """Parse ``4SX-W`` / ``3N-S`` / ``1C`` (declarer defaults to North)."""
        body, _, seat = text.strip().partition("-")
        body = body.upper()
        doubling = len(body) - len(body.rstrip("X"))
        body = body.rstrip("X")
        if len(body) < 2 or not body[0].isdigit() or doubling > 2:
            raise ParseError(f"bad contract {text!r}")
        declarer = Seat.from_text(seat) if seat else Seat.NORTH
        return cls(int(body[0]), Strain.from_text(body[1:]), Doubling(doubling), declarer)
