import pytest
from hypothesis import given, strategies as st

from bridge_elicit.cards import (
    Card, Contract, Deal, Doubling, Hand, ParseError, Seat, Strain, Suit, Vulnerability,
    deal_from_masks, parse_deal, parse_hand, read_deals, serialize_deal, write_deals,
)
from conftest import EXAMPLE1_LINE

deck_orders = st.permutations(range(52))


def deal_of(order, vul=Vulnerability.NONE) -> Deal:
    return deal_from_masks([sum(1 << i for i in order[13 * s:13 * s + 13]) for s in range(4)], vul)


def test_card_index_layout():
    assert Card(Suit.CLUB, 2).index == 0
    assert Card(Suit.SPADE, 14).index == 51
    assert Card.from_index(Card(Suit.HEART, 11).index) == Card(Suit.HEART, 11)


def test_card_parse_forms():
    assert Card.parse("SA") == Card(Suit.SPADE, 14)
    assert Card.parse("h10") == Card(Suit.HEART, 10)
    assert Card(Suit.HEART, 10).atom() == "h10"
    with pytest.raises(ParseError):
        Card.parse("X3")


def test_hand_text_roundtrip(example1_south):
    assert example1_south.to_text() == "Q94.KT652.95.KT3"
    assert parse_hand("Q94.K10652.95.K103") == example1_south
    assert example1_south.atoms()[:3] == ["sq", "s9", "s4"]


@pytest.mark.parametrize("text", ["Q94.KT652.95.KT", "Q94.KT652.95.KT32", "QQ4.KT652.95.KT3", "Q94.KT652.95"])
def test_hand_rejects_bad_text(text):
    with pytest.raises(ParseError):
        parse_hand(text)


def test_hand_is_immutable(example1_south):
    with pytest.raises(AttributeError):
        example1_south.foo = 1


def test_deal_line_roundtrip(example1):
    assert serialize_deal(example1) == EXAMPLE1_LINE
    assert example1.vulnerability is Vulnerability.NS
    assert example1.dealer is Seat.WEST


def test_overlapping_hands_rejected(example1):
    with pytest.raises(ValueError):
        Deal(example1.north, example1.north, example1.south, example1.west)


@given(deck_orders, st.sampled_from(list(Vulnerability)))
def test_random_deal_roundtrip_and_partition(order, vul):
    d = deal_of(order, vul)
    assert parse_deal(serialize_deal(d)) == d
    masks = [h.mask for h in d.hands]
    assert sum(masks) == (1 << 52) - 1
    assert all(len(h.cards) == 13 for h in d.hands)


def test_deal_file_roundtrip(tmp_path, example1, example2):
    p = tmp_path / "x.deals"
    write_deals(p, [example1, example2], ["two boards"])
    assert read_deals(p) == [example1, example2]


@pytest.mark.parametrize("text,ns,ew", [("o", False, False), ("n", True, False), ("e", False, True), ("b", True, True),
                                        ("none", False, False), ("both", True, True)])
def test_vulnerability_codes(text, ns, ew):
    v = Vulnerability.from_text(text)
    assert (v.ns_vulnerable, v.ew_vulnerable) == (ns, ew)


def test_contract_parse_and_text():
    c = Contract.parse("4SX-W")
    assert (c.level, c.strain, c.doubling, c.declarer) == (4, Strain.SPADE, Doubling.DOUBLED, Seat.WEST)
    assert str(c) == "4SX-W"
    assert Contract.parse("3NT-S") == Contract(3, Strain.NOTRUMP, Doubling.UNDOUBLED, Seat.SOUTH)
    with pytest.raises(ValueError):
        Contract(8, Strain.CLUB)


def test_seat_helpers():
    assert Seat.WEST.next is Seat.NORTH
    assert Seat.NORTH.partner is Seat.SOUTH
    assert Seat.from_text("w") is Seat.WEST
