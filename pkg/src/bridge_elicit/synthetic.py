"""Synthetic labeled hands for checking learners against a known rule."""

from __future__ import annotations

from typing import Callable

import numpy as np

from .cards import Hand, Vulnerability
from .dealgen import VUL_ORDER
from .predicates import hcp, nbs
from .records import Dataset, Label, LabeledExample


def planted_rule(hand: Hand, vul: Vulnerability) -> bool:
    """bid iff no spades or at least 14 HCP."""
    return nbs(hand) == 0 or hcp(hand) >= 14


def random_hands(n: int, seed: int) -> list[Hand]:
    rng = np.random.default_rng(seed)
    weights = 1 << np.arange(52, dtype=object)
    hands = []
    for _ in range(n):
        cards = rng.choice(52, size=13, replace=False)
        hands.append(Hand(int(sum(weights[cards]))))
    return hands


def planted_dataset(n: int, seed: int, rule: Callable[[Hand, Vulnerability], bool] = planted_rule,
                    vulnerable: Vulnerability | None = None) -> Dataset:
    """``n`` uniformly random South hands labeled by ``rule``; the
    vulnerability is drawn uniformly unless fixed."""
    rng = np.random.default_rng([seed, 1])
    out = []
    for h in random_hands(n, seed):
        vul = vulnerable or VUL_ORDER[int(rng.integers(4))]
        out.append(LabeledExample(h, vul, Label.BID if rule(h, vul) else Label.PASS, "synthetic"))
    return Dataset(out)
