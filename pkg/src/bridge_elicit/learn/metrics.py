"""Model predictions and the evaluation criteria: fidelity, complexity, overlap."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from ..records import Dataset, Label, LabeledExample
from .background import Facts
from .evaluation import rules_coverage
from .logic import RuleSet
from .tilde import Tree

Model = Union[RuleSet, Tree]


@dataclass(frozen=True)
class Metrics:
    fidelity: float  # agreement with the labels
    complexity: int  # clauses of a rule set, inner nodes of a tree
    overlap: float  # share of bid predictions explained by two or more clauses

    def as_dict(self) -> dict:
        return {"fidelity": self.fidelity, "complexity": self.complexity, "overlap": self.overlap}


def _facts(data: Dataset | Sequence[LabeledExample] | Facts) -> Facts:
    return data if isinstance(data, Facts) else Facts.from_examples(list(data))


def predict_facts(model: Model, facts: Facts) -> np.ndarray:
    """Boolean bid prediction for every example."""
    if isinstance(model, Tree):
        return model.predict_facts(facts)
    return rules_coverage(model, facts).any(axis=0)


def predict(model: Model, example: LabeledExample) -> Label:
    bid = predict_facts(model, Facts.from_hands([example.south], [example.vul]))[0]
    return Label.BID if bid else Label.PASS


def complexity(model: Model) -> int:
    return model.complexity if isinstance(model, Tree) else len(model)


def evaluate(model: Model, data: Dataset | Sequence[LabeledExample] | Facts) -> Metrics:
    facts = _facts(data)
    if not len(facts):
        return Metrics(0.0, complexity(model), 0.0)
    if isinstance(model, Tree):
        pred = model.predict_facts(facts)
        overlap = 0.0
    else:
        fires = rules_coverage(model, facts)
        pred = fires.any(axis=0)
        n_fired = int(pred.sum())
        overlap = float((fires.sum(axis=0) >= 2).sum() / n_fired) if n_fired else 0.0
    fidelity = float((pred == facts.positive).mean())
    return Metrics(fidelity, complexity(model), overlap)


def majority_fidelity(data: Dataset | Sequence[LabeledExample] | Facts) -> float:
    """Accuracy of always predicting the more frequent label."""
    facts = _facts(data)
    if not len(facts):
        return 0.0
    p = float(facts.positive.mean())
    return max(p, 1 - p)
