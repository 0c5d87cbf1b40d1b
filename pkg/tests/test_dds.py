import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from bridge_elicit.cards import Card, Contract, Doubling, Seat, Strain, Suit, Vulnerability, parse_deal
from bridge_elicit.dds import (
    CONTRACT_SET_PRESETS, ContractSet, MalformedPosition, build_table, contract_set_preset,
    read_score_tables, score_contract, score_table, solve, solve_position, write_score_tables,
)
from bridge_elicit.dds.table import DEFENDED, endplay_available, trick_tables
from oracles import duplicate_score, minimax_tricks, random_position

needs_endplay = pytest.mark.skipif(not endplay_available(), reason="endplay not installed")
STRAINS = list(Strain)


def trump_of(strain):
    return None if strain is Strain.NOTRUMP else Suit(int(strain))


# -- solver -----------------------------------------------------------------


def test_one_card_ending_highest_trump_wins():
    hands = [[Card(Suit.SPADE, 14)], [Card(Suit.HEART, 14)], [Card(Suit.SPADE, 2)], [Card(Suit.HEART, 13)]]
    assert solve(hands, Strain.SPADE, Seat.NORTH) == 1
    assert solve(hands, Strain.HEART, Seat.EAST) == 1


def test_full_suit_hands():
    hands = [[Card(s, r) for r in range(2, 15)] for s in (Suit.SPADE, Suit.HEART, Suit.DIAMOND, Suit.CLUB)]
    assert solve(hands, Strain.SPADE, Seat.NORTH) == 13
    assert solve(hands, Strain.NOTRUMP, Seat.NORTH) == 0  # East leads hearts and keeps the lead


@pytest.mark.parametrize("seed", range(12))
def test_matches_exhaustive_oracle(seed):
    rng = random.Random(seed)
    hands = random_position(rng, 3)
    for strain, declarer in product(STRAINS, Seat):
        assert solve(hands, strain, declarer) == minimax_tricks(hands, trump_of(strain), int(declarer))


@pytest.mark.parametrize("seed", range(6))
def test_pruning_toggles_change_nothing(seed):
    hands = random_position(random.Random(100 + seed), 4)
    for strain, declarer in product(STRAINS, Seat):
        ref = solve(hands, strain, declarer)
        for opts in ({"use_tt": False}, {"collapse_equivalent": False}, {"use_claims": False},
                     {"use_tt": False, "collapse_equivalent": False, "use_claims": False}):
            assert solve(hands, strain, declarer, **opts) == ref


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.sampled_from(STRAINS), st.sampled_from(list(Seat)))
def test_zero_sum(seed, strain, leader):
    hands = random_position(random.Random(seed), 3)
    a = solve_position(hands, strain, leader, Seat.NORTH)
    b = solve_position(hands, strain, leader, Seat.EAST)
    assert a + b == 3


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.sampled_from(STRAINS), st.randoms(use_true_random=False))
def test_card_order_within_hand_is_irrelevant(seed, strain, rnd):
    hands = random_position(random.Random(seed), 3)
    shuffled = [rnd.sample(h, len(h)) for h in hands]
    assert solve(hands, strain, Seat.SOUTH) == solve(shuffled, strain, Seat.SOUTH)


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.sampled_from(STRAINS))
def test_promoting_a_declarer_card_never_hurts(seed, strain):
    hands = random_position(random.Random(seed), 3)
    before = solve(hands, strain, Seat.NORTH)
    # swap a North/South card with a higher card of the same suit held by a defender
    for ns, ew in product((0, 2), (1, 3)):
        for i, c in enumerate(hands[ns]):
            for j, d in enumerate(hands[ew]):
                if d.suit == c.suit and d.rank > c.rank:
                    new = [list(h) for h in hands]
                    new[ns][i], new[ew][j] = d, c
                    assert solve(new, strain, Seat.NORTH) >= before
                    return


def test_malformed_positions_rejected():
    with pytest.raises(MalformedPosition):
        solve([[Card(Suit.SPADE, 14)], [Card(Suit.SPADE, 13)], [], [Card(Suit.SPADE, 12)]], Strain.SPADE, Seat.NORTH)
    with pytest.raises(MalformedPosition):
        solve([[Card(Suit.SPADE, 14)]] * 4, Strain.SPADE, Seat.NORTH)


# -- scoring ----------------------------------------------------------------


def test_scoring_matches_independent_table():
    for level, strain, dbl, vul, tricks in product(range(1, 8), STRAINS, range(3), (False, True), range(14)):
        c = Contract(level, strain, Doubling(dbl), Seat.NORTH)
        expect = duplicate_score(level, strain.letter, dbl, vul, tricks)
        assert score_contract(c, vul, tricks) == expect, (str(c), vul, tricks)


@pytest.mark.parametrize("text,vul,tricks,points", [
    ("4SX-W", Vulnerability.NONE, 10, 590),
    ("4SX-W", Vulnerability.EW, 8, -500),
    ("1C-N", Vulnerability.NONE, 7, 70),
    ("4SX-W", Vulnerability.NS, 8, -300),  # EW not vulnerable
    ("3N-S", Vulnerability.NS, 9, 600),
])
def test_scoring_examples(text, vul, tricks, points):
    assert score_contract(Contract.parse(text), vul, tricks) == points


def test_made_is_positive_down_is_negative():
    for level, strain, dbl, vul in product(range(1, 8), STRAINS, range(3), (False, True)):
        c = Contract(level, strain, Doubling(dbl))
        assert score_contract(c, vul, level + 6) > 0
        assert score_contract(c, vul, level + 5) < 0


def test_score_rejects_impossible_tricks():
    with pytest.raises(ValueError):
        score_contract(Contract(1, Strain.CLUB), False, 14)


# -- score tables -----------------------------------------------------------


def test_contract_sets():
    assert len(ContractSet().ns_contracts()) == 30
    outbid = contract_set_preset("outbid")
    names = [f"{l}{s.letter}" for l, s in outbid.ns_contracts()]
    assert names == ["5C", "5D", "5H", "6C", "6D", "6H", "6N", "7C", "7D", "7H", "7N"]
    for preset in CONTRACT_SET_PRESETS.values():
        assert ContractSet.from_json(preset.to_json()) == preset
    with pytest.raises(ValueError):
        contract_set_preset("nope")


def fake_tricks(n=7):
    return {(s, d): n for s in Strain for d in Seat}


def test_table_layout_and_signs(example1):
    t = build_table(example1, fake_tricks())
    assert len(t) == 31
    assert t.defended.contract == DEFENDED
    # 4SX by West with 7 tricks, EW not vulnerable: down 3 doubled = 500 to NS
    assert t.defended.ns_score == 500
    assert t.ns_score(1, Strain.CLUB) == 70 + 0 and t.ns_score(3, Strain.NOTRUMP) == -200
    assert t.best_ns == max(e.ns_score for e in t.ns_entries)


def test_table_keeps_better_declarer(example1):
    tricks = fake_tricks()
    tricks[(Strain.HEART, Seat.SOUTH)] = 10
    t = build_table(example1, tricks)
    e = next(e for e in t.ns_entries if e.contract.level == 4 and e.contract.strain is Strain.HEART)
    assert e.contract.declarer is Seat.SOUTH and e.ns_score == 620


def test_table_csv_roundtrip(tmp_path, example1, example2):
    tables = [build_table(example1, fake_tricks(6)), build_table(example2, fake_tricks(9))]
    write_score_tables(tmp_path / "t.csv", tables)
    back = read_score_tables(tmp_path / "t.csv", [example1, example2])
    assert [b.entries for b in back] == [t.entries for t in tables]


@needs_endplay
def test_endplay_example1(example1):
    t = score_table(example1, backend="endplay")
    assert t.defended.tricks == 8 and t.defended.ns_score == 300
    assert t.best_ns == 650


@needs_endplay
def test_backends_agree_where_native_is_fast():
    d = parse_deal("o N:AKQJT98765432... E:.AKQJT98765432.. S:..AKQJT98765432. W:...AKQJT98765432")
    native = trick_tables([d], backend="native")[0]
    ep = trick_tables([d], backend="endplay")[0]
    assert native == {k: ep[k] for k in native}


@needs_endplay
def test_pointless_north_south_lose_everywhere():
    d = parse_deal("n N:T98.T98.T98.T987 E:AKQJ.AKQJ.432.Q2 S:765.765.765.6543 W:432.432.AKQJ.AKJ")
    t = score_table(d, backend="endplay")
    assert all(e.ns_score < 0 for e in t.ns_entries)
