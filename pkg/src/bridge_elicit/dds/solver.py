"""Exact double-dummy trick counting.

The search asks boolean questions ("can the declaring side still take
``need`` tricks?") and the driver binary-searches the answer, so every
node is searched with a null window. Positions at trick boundaries are
cached in a transposition table keyed by the relative rank layout of each
suit: once cards are gone, only the order of the remaining ones matters.
Cards of one hand that are adjacent among the live cards of a suit are
interchangeable, and only one of them is tried.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from ..cards import Card, Deal, Seat, Strain

_FULL = (1 << 13) - 1


class MalformedPosition(ValueError):
    pass


def _position_masks(hands) -> list[int]:
    """Flatten four hands into 16 suit masks, index ``seat * 4 + suit``."""
    if isinstance(hands, Deal):
        hands = hands.hands
    if len(hands) != 4:
        raise MalformedPosition("need four hands")
    masks = [0] * 16
    seen = 0
    sizes = []
    for seat, hand in enumerate(hands):
        cards = list(hand)
        sizes.append(len(cards))
        for c in cards:
            bit = 1 << c.index
            if seen & bit:
                raise MalformedPosition(f"duplicate card {c}")
            seen |= bit
            masks[seat * 4 + c.suit] |= 1 << (c.rank - 2)
    if len(set(sizes)) != 1:
        raise MalformedPosition(f"unequal hand sizes {sizes}")
    if sizes[0] > 13:
        raise MalformedPosition("more than 13 cards in a hand")
    return masks


def _between(hi: int, lo: int) -> int:
    """Bits strictly between single bits ``lo`` < ``hi``."""
    return (hi - 1) & ~((lo << 1) - 1)


class _Search:
    def __init__(self, masks: list[int], trump: int | None, side: int,
                 use_tt: bool, collapse: bool, claims: bool):
        self.h = masks
        self.trump = trump
        self.side = side
        self.use_tt = use_tt
        self.collapse = collapse
        self.claims = claims
        self.tt: dict = {}
        self.suit_codes: dict = {}
        self.trick = [0, 0, 0, 0]  # cards of the current trick, per suit
        self.nodes = 0

    # -- transposition key -------------------------------------------------
    def _suit_code(self, a: int, b: int, c: int, d: int) -> int:
        key = (a, b, c, d)
        code = self.suit_codes.get(key)
        if code is None:
            code = 1
            live = a | b | c | d
            while live:
                low = live & -live
                owner = 0 if a & low else 1 if b & low else 2 if c & low else 3
                code = (code << 2) | owner
                live ^= low
            self.suit_codes[key] = code
        return code

    def _key(self, leader: int):
        h = self.h
        return (
            leader,
            self._suit_code(h[0], h[4], h[8], h[12]),
            self._suit_code(h[1], h[5], h[9], h[13]),
            self._suit_code(h[2], h[6], h[10], h[14]),
            self._suit_code(h[3], h[7], h[11], h[15]),
        )

    # -- quick tricks ----------------------------------------------------------
    def _top_run(self, seat: int, suit: int) -> int:
        """Consecutive top live cards of ``suit`` held by ``seat``."""
        h = self.h
        mine = h[seat * 4 + suit]
        live = h[suit] | h[4 + suit] | h[8 + suit] | h[12 + suit]
        n = 0
        while live:
            top = 1 << (live.bit_length() - 1)
            if not mine & top:
                break
            n += 1
            live ^= top
        return n

    def _quick_tricks(self, leader: int) -> int:
        """Tricks the leader can cash immediately, a sound lower bound."""
        h = self.h
        t = self.trump
        opp_trumps = t is not None and (h[((leader + 1) % 4) * 4 + t] or h[((leader + 3) % 4) * 4 + t])
        if opp_trumps:
            return self._top_run(leader, t)
        return sum(self._top_run(leader, s) for s in range(4) if h[leader * 4 + s])

    # -- search ------------------------------------------------------------------
    def can_make(self, leader: int, need: int, remaining: int) -> bool:
        if need <= 0:
            return True
        if need > remaining:
            return False
        key = None
        if self.use_tt:
            key = self._key(leader)
            bounds = self.tt.get(key)
            if bounds is not None:
                if bounds[0] >= need:
                    return True
                if bounds[1] < need:
                    return False
        if self.claims:
            qt = self._quick_tricks(leader)
            if leader % 2 == self.side:
                if qt >= need:
                    return True
            elif remaining - qt < need:
                return False
        result = self._trick(0, leader, -1, leader, -1, 0, need, remaining)
        if key is not None:
            lb, ub = self.tt.get(key, (0, remaining))
            if result:
                lb = max(lb, need)
            else:
                ub = min(ub, need - 1)
            self.tt[key] = (lb, ub)
        return result

    def _moves(self, seat: int, led: int, win_seat: int, win_suit: int, win_bit: int):
        """Legal moves, one per equivalence class, best-guess first."""
        h = self.h
        base = seat * 4
        trump = self.trump
        if led >= 0 and h[base + led]:
            suits = (led,)
        else:
            suits = [s for s in range(4) if h[base + s]]
        partner_wins = led >= 0 and (win_seat - seat) % 2 == 0
        keyed = []
        for s in suits:
            mine = h[base + s]
            live = h[s] | h[4 + s] | h[8 + s] | h[12 + s]
            others = (live | self.trick[s]) & ~mine
            top = 1 << (live.bit_length() - 1)
            is_trump = s == trump
            prev = 0
            m = mine
            while m:
                bit = 1 << (m.bit_length() - 1)
                m ^= bit
                if self.collapse and prev and not others & _between(prev, bit):
                    prev = bit
                    continue
                prev = bit
                if led < 0:
                    # cash winners first, otherwise lead low
                    key = (0, 0) if bit == top else (1, bit)
                else:
                    wins = (bit > win_bit) if s == win_suit else is_trump
                    if partner_wins:
                        key = (wins, is_trump, bit)
                    else:
                        key = (not wins, is_trump and not wins, bit)
                keyed.append((key, s, bit))
        if len(keyed) > 1:
            keyed.sort()
        return [(s, bit) for _, s, bit in keyed]

    def _beats(self, suit: int, bit: int, win_suit: int, win_bit: int) -> bool:
        if suit == win_suit:
            return bit > win_bit
        return suit == self.trump

    def _trick(self, pos: int, leader: int, led: int, win_seat: int, win_suit: int,
               win_bit: int, need: int, remaining: int) -> bool:
        self.nodes += 1
        seat = (leader + pos) % 4
        maximizing = seat % 2 == self.side
        h = self.h
        trick = self.trick
        for suit, bit in self._moves(seat, led, win_seat, win_suit, win_bit):
            idx = seat * 4 + suit
            h[idx] ^= bit
            if pos == 0:
                ws, wsu, wb, ld = seat, suit, bit, suit
            elif self._beats(suit, bit, win_suit, win_bit):
                ws, wsu, wb, ld = seat, suit, bit, led
            else:
                ws, wsu, wb, ld = win_seat, win_suit, win_bit, led
            if pos == 3:
                self.trick = [0, 0, 0, 0]
                won = 1 if ws % 2 == self.side else 0
                r = self.can_make(ws, need - won, remaining - 1)
                self.trick = trick
            else:
                trick[suit] |= bit
                r = self._trick(pos + 1, leader, ld, ws, wsu, wb, need, remaining)
                trick[suit] ^= bit
            h[idx] ^= bit
            if r == maximizing:
                return r
        return not maximizing


def solve_position(hands, trump: Strain, leader: Seat, declaring_side_of: Seat, *,
                   use_tt: bool = True, collapse_equivalent: bool = True,
                   use_claims: bool = True) -> int:
    """Tricks the side of ``declaring_side_of`` takes with ``leader`` on lead."""
    masks = _position_masks(hands)
    n = sum(m.bit_count() for m in masks[0:4])
    trump = Strain(trump)
    search = _Search(masks, None if trump is Strain.NOTRUMP else int(trump),
                     int(declaring_side_of) % 2, use_tt, collapse_equivalent, use_claims)
    lo, hi = 0, n
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if search.can_make(int(leader), mid, n):
            lo = mid
        else:
            hi = mid - 1
    return lo


def solve(hands: Deal | Sequence[Iterable[Card]], trump: Strain, declarer: Seat, **options) -> int:
    """Double-dummy tricks for the declaring side; the opening lead comes
    from declarer's left. ``hands`` is a Deal or four equal-size card
    collections in N, E, S, W order."""
    declarer = Seat(declarer)
    return solve_position(hands, trump, declarer.next, declarer, **options)


def dd_table(hands, **options) -> dict[tuple[Strain, Seat], int]:
    """Tricks for every (strain, declarer) pair."""
    return {(s, d): solve(hands, s, d, **options) for s in Strain for d in Seat}
