"""Independent reference implementations used only by the tests."""

from __future__ import annotations

import random

from bridge_elicit.cards import Card, Suit


def minimax_tricks(hands, trump, declarer):
    """Plain exhaustive minimax: every legal card at every turn, no pruning,
    no caching. ``hands`` are four lists of Card (N, E, S, W); ``trump`` is a
    Suit or None for notrump. Returns tricks for the declaring side."""
    # each hand is a 52-bit int, bit suit * 13 + rank - 2
    held = [sum(1 << (int(c.suit) * 13 + c.rank - 2) for c in h) for h in hands]
    suit_bits = [((1 << 13) - 1) << (13 * s) for s in range(4)]
    side = declarer % 2
    t = -1 if trump is None else int(trump)

    def play(seat, k, leader, led, best_seat, best):
        hand = held[seat]
        if k == 0:
            if not hand:
                return 0
            legal = hand
        else:
            legal = hand & suit_bits[led] or hand
        maximizing = seat % 2 == side
        out = -1 if maximizing else 99
        while legal:
            bit = legal & -legal
            legal ^= bit
            suit = (bit.bit_length() - 1) // 13
            if k == 0:
                bs, b, ld = seat, bit, suit
            else:
                ld = led
                bsuit = (best.bit_length() - 1) // 13
                if (suit == bsuit and bit > best) or (suit == t and bsuit != t):
                    bs, b = seat, bit
                else:
                    bs, b = best_seat, best
            held[seat] = hand ^ bit
            if k == 3:
                r = (1 if bs % 2 == side else 0) + play(bs, 0, bs, -1, -1, 0)
            else:
                r = play((seat + 1) % 4, k + 1, leader, ld, bs, b)
            held[seat] = hand
            if maximizing:
                if r > out:
                    out = r
            elif r < out:
                out = r
        return out

    lead = (declarer + 1) % 4
    return play(lead, 0, lead, -1, -1, 0)


def random_position(rng: random.Random, cards_per_hand: int):
    deck = [Card(s, r) for s in Suit for r in range(2, 15)]
    rng.shuffle(deck)
    return [sorted(deck[i * cards_per_hand:(i + 1) * cards_per_hand]) for i in range(4)]


def duplicate_score(level, strain, doubled, vulnerable, tricks):
    """Table-driven duplicate scoring, written independently of the package.
    strain: 'C','D','H','S','N'; doubled: 0/1/2."""
    need = level + 6
    mult = (1, 2, 4)[doubled]
    if tricks >= need:
        if strain in "CD":
            per, first = 20, 20
        elif strain in "HS":
            per, first = 30, 30
        else:
            per, first = 30, 40
        trick_pts = (first + per * (level - 1)) * mult
        total = trick_pts
        total += (500 if vulnerable else 300) if trick_pts >= 100 else 50
        if level == 6:
            total += 750 if vulnerable else 500
        if level == 7:
            total += 1500 if vulnerable else 1000
        total += (0, 50, 100)[doubled]
        over = tricks - need
        if doubled == 0:
            total += over * per
        else:
            total += over * (200 if vulnerable else 100) * (doubled)
        return total
    down = need - tricks
    if doubled == 0:
        return -down * (100 if vulnerable else 50)
    if vulnerable:
        sched = [200] + [300] * 12
    else:
        sched = [100, 200, 200] + [300] * 10
    return -sum(sched[:down]) * (1 if doubled == 1 else 2)
