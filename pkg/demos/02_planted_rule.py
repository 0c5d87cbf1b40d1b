"""Both learners recover a known rule from synthetic hands.

Hands are labeled "bid iff no spades or at least 14 HCP"; the rule learner
should print exactly those two clauses and the tree learner an equivalent tree.

Run: python3 demos/02_planted_rule.py
"""

import time

from bridge_elicit.learn.aleph import induce
from bridge_elicit.learn.bias import preset_bias
from bridge_elicit.learn.metrics import evaluate
from bridge_elicit.learn.tilde import learn_tree
from bridge_elicit.synthetic import planted_dataset

train, heldout = planted_dataset(500, 1), planted_dataset(500, 2)
print(f"{len(train)} training hands, {train.n_bid} labeled bid")

t0 = time.perf_counter()
rules = induce(train, preset_bias("L2"))
print(f"\nrule set ({time.perf_counter() - t0:.1f} s):")
print(rules.to_text())
print("held-out:", evaluate(rules, heldout).as_dict())

tree = learn_tree(train, preset_bias("L1"))
print("\ntree:")
print(tree.to_text())
print("held-out:", evaluate(tree, heldout).as_dict())
