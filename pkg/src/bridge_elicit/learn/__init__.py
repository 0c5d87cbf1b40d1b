"""Relational learners over South hands: rule induction, trees, metrics."""

from .aleph import BottomClause, SearchParams, bottom_clause, example_bottom, induce, induce_max, search_clause
from .bias import EMPTY_BIAS, BiasError, LanguageBias, Mode, load_bias, preset_bias
from .evaluation import clause_coverage, clause_holds, rules_coverage
from .expert import MODEL_M_TEXT, expert_model_M
from .logic import Clause, ClauseSyntaxError, Literal, RuleSet, Var, parse_clause, parse_rules
from .metrics import Metrics, Model, evaluate, majority_fidelity, predict, predict_facts
from .tilde import Inner, Leaf, Tree, TreeParams, TreeSyntaxError, learn_tree, parse_tree

__all__ = [
    "BiasError", "BottomClause", "Clause", "ClauseSyntaxError", "EMPTY_BIAS", "Inner",
    "LanguageBias", "Leaf", "Literal", "MODEL_M_TEXT", "Metrics", "Mode", "Model", "RuleSet",
    "SearchParams", "Tree", "TreeParams", "TreeSyntaxError", "Var", "bottom_clause",
    "clause_coverage", "clause_holds", "evaluate", "example_bottom", "expert_model_M", "induce",
    "induce_max", "learn_tree", "load_bias", "majority_fidelity", "parse_clause", "parse_rules",
    "parse_tree", "predict", "predict_facts", "preset_bias", "rules_coverage", "search_clause",
]
