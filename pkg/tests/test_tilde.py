from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from bridge_elicit.cards import Vulnerability, parse_hand
from bridge_elicit.learn.bias import preset_bias
from bridge_elicit.learn.tilde import (
    TREE_HEAD, Inner, Leaf, Tree, TreeParams, TreeSyntaxError, learn_tree, parse_tree,
)
from bridge_elicit.predicates import hcp, nb, nbs
from bridge_elicit.records import Label
from bridge_elicit.synthetic import planted_dataset

L1 = preset_bias("L1")
REFERENCE_DOC = Path(__file__).resolve().parents[1] / "paper.md"


def complete_tree_text() -> str:
    lines = REFERENCE_DOC.read_text().splitlines()
    start = max(i for i, ln in enumerate(lines) if ln == TREE_HEAD)  # the complete listing comes last
    end = next(i for i in range(start, len(lines)) if lines[i].startswith("\\end{lstlisting}"))
    body = [ln.rstrip() if "[" in ln else ln for ln in lines[start:end] if ln.strip()]
    return "\n".join(body) + "\n"


@pytest.fixture(scope="module")
def published():
    if not REFERENCE_DOC.exists():
        pytest.skip("reference document not present")
    return complete_tree_text()


def test_published_tree_round_trips(published):
    tree = parse_tree(published)
    assert tree.complexity == 15
    assert len(tree.leaves()) == 16
    assert tree.to_text() == published
    assert tree.scope_violations() == []
    assert sum(leaf.support for leaf in tree.leaves()) == 310


def test_published_tree_predictions(published, example1_south):
    tree = parse_tree(published)
    assert tree.predict(example1_south, Vulnerability.NONE) is Label.PASS  # 3-card suit branch
    assert tree.predict(parse_hand("2.KQJ9876.9876.2"), Vulnerability.NONE) is Label.BID
    assert tree.predict(parse_hand("2.AJ9876.9876.32"), Vulnerability.NONE) is Label.BID
    assert tree.predict(parse_hand("2.AT9876.9876.32"), Vulnerability.NONE) is Label.PASS  # hcp 4


def test_root_picks_long_suit_test():
    data = planted_dataset(300, 5, rule=lambda h, v: max(nb(h, s) for s in range(4)) >= 6)
    tree = learn_tree(data, L1)
    assert tree.to_text().splitlines()[1] == "nb(A,-F,-G),gteq(G,6)? "
    assert tree.complexity == 1
    assert tree.root.yes == Leaf(Label.BID, 66.0)


def test_planted_rule_is_learned_exactly(planted_train, planted_heldout):
    tree = learn_tree(planted_train, L1)
    for e in planted_heldout:
        assert tree.predict(e.south, e.vul) is e.label


@settings(max_examples=10)
@given(st.integers(0, 10**6), st.integers(1, 5))
def test_learned_trees_keep_variables_in_scope(seed, min_leaf):
    data = planted_dataset(80, seed, rule=lambda h, v: (hcp(h) + nbs(h)) % 3 == 0)
    tree = learn_tree(data, preset_bias("L0"), TreeParams(min_leaf=min_leaf))
    assert tree.scope_violations() == []
    assert all(leaf.support >= min_leaf for leaf in tree.leaves())
    assert parse_tree(tree.to_text()).to_text() == tree.to_text()


def test_max_depth_and_pure_data():
    data = planted_dataset(200, 6, rule=lambda h, v: hcp(h) % 2 == 0)
    assert learn_tree(data, L1, TreeParams(max_depth=0)).complexity == 0
    assert learn_tree(data, L1, TreeParams(max_depth=2)).complexity <= 3
    allbid = planted_dataset(20, 7, rule=lambda h, v: True)
    t = learn_tree(allbid, L1)
    assert t.root == Leaf(Label.BID, 20.0)
    with pytest.raises(ValueError):
        learn_tree([], L1)


@pytest.mark.parametrize("text", [
    "",
    "decision(A)\n[bid] 1.0\n",
    TREE_HEAD + "\nhcp(A,4)? \n+--yes: [bid] 1.0\n",
    TREE_HEAD + "\n[maybe] 1.0\n",
])
def test_malformed_tree_text(text):
    with pytest.raises(TreeSyntaxError):
        parse_tree(text)


def test_tree_without_supports():
    t = Tree(Inner(parse_tree(TREE_HEAD + "\nhcp(A,4)? \n+--yes: [bid]\n+--no:  [pass]\n").root.test,
                   Leaf(Label.BID), Leaf(Label.PASS)))
    assert t.to_text().endswith("+--no:  [pass]\n")
