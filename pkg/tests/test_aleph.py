import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bridge_elicit.cards import Vulnerability, parse_hand
from bridge_elicit.learn.aleph import SearchParams, bottom_clause, induce, induce_max
from bridge_elicit.learn.background import Facts
from bridge_elicit.learn.bias import EMPTY_BIAS, preset_bias
from bridge_elicit.learn.evaluation import clause_coverage, clause_holds
from bridge_elicit.learn.logic import parse_rules
from bridge_elicit.records import Dataset, Label, LabeledExample
from bridge_elicit.synthetic import planted_dataset, random_hands

L2 = preset_bias("L2")
PLANTED = parse_rules("decision(A,4,B,C,bid) :- hcp(A,D), gteq(D,14).\n"
                      "decision(A,4,B,C,bid) :- nbs(A,0).\n")


def test_bottom_clause_of_example_hand(example1_south):
    b = bottom_clause(example1_south, Vulnerability.NONE, L2)
    text = b.clause().to_text()
    # HCP 8, shape 3-5-2-3
    for piece in ("hcp(A,8)", "nbs(A,3)", "distribution(A,[5,3,3,2])", "gteq(D,8)", "lteq(D,8)"):
        assert piece in text
    assert "gteq(D,9)" not in text and "lteq(D,7)" not in text
    assert clause_holds(b.clause(), example1_south, Vulnerability.NONE)
    assert len(bottom_clause(example1_south, Vulnerability.NONE, EMPTY_BIAS)) == 0


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_bottom_clause_covers_its_seed(seed):
    h = random_hands(1, seed)[0]
    for lang in ("L0", "L1", "L2"):
        b = bottom_clause(h, Vulnerability.EW, preset_bias(lang))
        assert clause_holds(b.clause(), h, Vulnerability.EW)


def test_induce_recovers_planted_rule(planted_train, planted_heldout):
    rules = induce(planted_train, L2)
    assert rules.same_clauses(PLANTED)
    facts = Facts.from_examples(list(planted_heldout))
    cover = np.any([clause_coverage(c, facts) for c in rules], axis=0)
    assert (cover == facts.positive).all()


def test_induce_max_recovers_planted_rule_on_small_data():
    assert induce_max(planted_dataset(120, 3), L2).same_clauses(PLANTED)


def test_clauses_respect_noise_and_min_pos(planted_train):
    facts = Facts.from_examples(list(planted_train))
    for noise in (0, 2):
        for c in induce(planted_train, L2, SearchParams(noise=noise, min_pos=3)):
            cov = clause_coverage(c, facts)
            assert (cov & ~facts.positive).sum() <= noise
            assert (cov & facts.positive).sum() >= 3
            assert len(c) <= L2.max_clause_length


def _single(label):
    h = parse_hand("AKQJT98765432...")
    return Dataset([LabeledExample(h, Vulnerability.NONE, label)])


def test_degenerate_inputs():
    assert len(induce(Dataset([]), L2)) == 0
    assert len(induce(_single(Label.PASS), L2)) == 0
    assert len(induce(_single(Label.BID), L2)) == 0  # below min_pos
    one = induce(_single(Label.BID), L2, SearchParams(min_pos=1))
    assert len(one) == 1 and len(one.clauses[0]) == 0  # no negatives: the bare head is best
    assert len(induce(planted_dataset(60, 4), EMPTY_BIAS)) == 0


def test_induce_is_deterministic(planted_train):
    a = induce(planted_train, preset_bias("L1"))
    b = induce(planted_train, preset_bias("L1"))
    assert a.to_text() == b.to_text()
