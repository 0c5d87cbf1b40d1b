import pytest
from hypothesis import given, strategies as st

from bridge_elicit.cards import Suit, Vulnerability, deal_from_masks, parse_hand
from bridge_elicit.predicates import (
    DISTRIBUTIONS, FLAT_HEADER, LANGUAGE_PREDICATES, BalanceClass, LanguageId, balance_class,
    distribution, flat_encode, hand_facts_text, hcp, longest_suit, nb, nbs, shortest_suit,
    suit_representation, vuln,
)
from bridge_elicit.records import Label, LabeledExample
from test_cards import deal_of

hands = st.permutations(range(52)).map(lambda o: deal_of(o).south)


def test_example1_south_goldens(example1_south):
    # values printed for this hand in the source material
    assert hcp(example1_south) == 8
    assert nb(example1_south, Suit.HEART) == 5
    assert suit_representation(example1_south, Suit.SPADE) == ((12,), 3)
    assert nbs(example1_south) == 3
    assert distribution(example1_south) == (5, 3, 3, 2)
    assert balance_class(example1_south) is BalanceClass.BALANCED


def test_distribution_catalogue():
    assert len(DISTRIBUTIONS) == 39
    assert all(sum(p) == 13 and list(p) == sorted(p, reverse=True) for p in DISTRIBUTIONS)


@given(st.permutations(range(52)))
def test_hcp_of_a_deal_sums_to_40(order):
    d = deal_of(order)
    assert sum(hcp(h) for h in d.hands) == 40


@given(hands)
def test_shape_predicates_agree(h):
    lengths = [nb(h, s) for s in Suit]
    assert sum(lengths) == 13
    assert distribution(h) == tuple(sorted(lengths, reverse=True))
    assert nb(h, longest_suit(h)) == max(lengths)
    assert nb(h, shortest_suit(h)) == min(lengths)
    assert 0 <= hcp(h) <= 37


def test_longest_suit_ties_go_to_higher_suit():
    h = parse_hand("AK32.Q432.J32.32")
    assert longest_suit(h) is Suit.SPADE
    assert shortest_suit(h) is Suit.CLUB


@pytest.mark.parametrize("text,cls", [
    ("AK32.Q43.J32.432", BalanceClass.BALANCED),
    ("AK432.Q4.J2.5432", BalanceClass.SEMIBALANCED),
    ("AK43287.Q4.J32.5", BalanceClass.UNBALANCED),
])
def test_balance_classes(text, cls):
    assert balance_class(parse_hand(text)) is cls


def test_vuln_pairs():
    assert vuln(Vulnerability.NS) == (True, False)
    assert vuln(Vulnerability.NONE) == (False, False)


def test_language_vocabularies():
    assert LANGUAGE_PREDICATES[LanguageId.L2] == {"distribution", "nb", "hcp", "lteq", "gteq", "nbs"}
    assert LANGUAGE_PREDICATES[LanguageId.L1] < LANGUAGE_PREDICATES[LanguageId.L0]
    assert "suit_representation" not in LANGUAGE_PREDICATES[LanguageId.L1]


def test_flat_encoding(example1_south):
    row = flat_encode(LabeledExample(example1_south, Vulnerability.NS, Label.PASS))
    assert len(row) == len(FLAT_HEADER) == 54
    assert row[:2] == [1, 0]
    # clubs first: K, T, 3 then zero padding
    assert row[2:6] == [13, 10, 3, 0]


def test_hand_facts_text(example1_south):
    lines = hand_facts_text(example1_south)
    h = "[sq,s9,s4,hk,h10,h6,h5,h2,d9,d5,ck,c10,c3]"
    assert f"hcp({h},8)." in lines
    assert f"nb({h},heart,5)." in lines
    assert f"suit_representation({h},spade,[q],3)." in lines
    assert f"distribution({h},[5,3,3,2])." in lines
    assert f"balanced({h})." in lines
