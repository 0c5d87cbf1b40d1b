"""Relational binary decision trees.

Each inner node holds a conjunction of literals. An example goes down the
yes branch when the conjunction, together with the literals on the yes
path above it, can be satisfied; the variables the test introduces are in
scope on the yes side only. Tests are chosen by gain ratio among the
candidates whose information gain is at least the average, and growth
stops at pure nodes or when no split leaves ``min_leaf`` examples on both
sides.

Trees print in an indented yes/no layout::

    decision(-A,-B,-C,-D,-E)
    nb(A,-F,-G),gteq(G,6)?
    +--yes: [bid] 57.0
    +--no:  [pass] 12.0

where ``A`` is the hand, ``C`` the vulnerability and a leading ``-`` marks
the first occurrence of a variable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import count, product
from typing import Iterator, Sequence, Union

import numpy as np

from ..cards import Hand, Vulnerability
from ..predicates import DISTRIBUTIONS
from ..records import Dataset, Label, LabeledExample
from .background import BOOL, DIST, HONORS, INT, PREDICATES, SUIT, SUIT_ATOMS, Facts, decode
from .bias import INT_DOMAIN, LanguageBias
from .evaluation import Table, extend
from .logic import HAND_VAR, VUL_VAR, ClauseSyntaxError, Literal, Var, format_term, parse_conjunction

TREE_HEAD = "decision(-A,-B,-C,-D,-E)"
TEXT_VUL_VAR = "C"  # the vulnerability is the third head argument in tree text


class TreeSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Leaf:
    label: Label
    support: float | None = None  # examples that reached the leaf in training

    @property
    def is_leaf(self) -> bool:
        return True


@dataclass(frozen=True)
class Inner:
    test: tuple[Literal, ...]
    yes: "Node"
    no: "Node"

    @property
    def is_leaf(self) -> bool:
        return False


Node = Union[Leaf, Inner]


def _test_vars(test: Sequence[Literal]) -> list[str]:
    seen: dict[str, None] = {}
    for lit in test:
        for v in lit.variables:
            seen.setdefault(v.name)
    return list(seen)


@dataclass(frozen=True)
class Tree:
    root: Node

    @property
    def complexity(self) -> int:
        """Number of inner nodes."""
        return sum(1 for n in self.nodes() if not n.is_leaf)

    def nodes(self) -> Iterator[Node]:
        stack = [self.root]
        while stack:
            n = stack.pop()
            yield n
            if not n.is_leaf:
                stack += [n.no, n.yes]

    def leaves(self) -> list[Leaf]:
        return [n for n in self.nodes() if n.is_leaf]

    def scope_violations(self) -> list[str]:
        """Variables introduced by a test that reappear under its no branch."""
        bad = []

        def walk(node: Node, bound: frozenset[str]) -> None:
            if node.is_leaf:
                return
            new = set(_test_vars(node.test)) - bound
            for v in new & _subtree_vars(node.no):
                bad.append(v)
            walk(node.yes, bound | new)
            walk(node.no, bound)

        walk(self.root, frozenset({HAND_VAR, VUL_VAR}))
        return bad

    def to_text(self) -> str:
        return tree_to_text(self)

    def predict_facts(self, facts: Facts) -> np.ndarray:
        """Boolean bid prediction per example."""
        out = np.zeros(len(facts), dtype=bool)
        _route(self.root, Table.root(np.arange(len(facts))), np.arange(len(facts)), facts, out)
        return out

    def predict(self, hand: Hand, vul: Vulnerability) -> Label:
        bid = self.predict_facts(Facts.from_hands([hand], [vul]))[0]
        return Label.BID if bid else Label.PASS


def _subtree_vars(node: Node) -> set[str]:
    out: set[str] = set()
    stack = [node]
    while stack:
        n = stack.pop()
        if not n.is_leaf:
            out |= set(_test_vars(n.test))
            stack += [n.yes, n.no]
    return out


def _split(table: Table, test: Sequence[Literal], facts: Facts) -> Table:
    for lit in test:
        table = extend(table, lit, facts)
        if not len(table):
            break
    return table


def _route(node: Node, table: Table, rows: np.ndarray, facts: Facts, out: np.ndarray) -> None:
    if node.is_leaf:
        out[rows] = node.label is Label.BID
        return
    yes_table = _split(table, node.test, facts)
    yes = np.zeros(len(facts), dtype=bool)
    yes[yes_table.ex] = True
    no_rows = rows[~yes[rows]]
    if len(yes_table):
        _route(node.yes, yes_table, np.unique(yes_table.ex), facts, out)
    if len(no_rows):
        _route(node.no, table.select(~yes[table.ex]), no_rows, facts, out)


# ---------------------------------------------------------------------------
# learning


@dataclass(frozen=True)
class TreeParams:
    min_leaf: int = 2
    max_depth: int | None = None


def _entropy(a: int, b: int) -> float:
    n = a + b
    h = 0.0
    for x in (a, b):
        if x:
            p = x / n
            h -= p * math.log2(p)
    return h


def _gain(yb: int, yp: int, nb_: int, np_: int) -> tuple[float, float]:
    """(information gain, gain ratio) of a binary split."""
    ny, nn = yb + yp, nb_ + np_
    n = ny + nn
    gain = _entropy(yb + nb_, yp + np_) - (ny * _entropy(yb, yp) + nn * _entropy(nb_, np_)) / n
    split_info = _entropy(ny, nn)
    return gain, (gain / split_info if split_info > 0 else 0.0)


def _constants(vtype: str, pred: str, bias: LanguageBias) -> list:
    if vtype == INT:
        lo, hi = bias.domain(INT_DOMAIN.get(pred, "length"))
        return list(range(lo, hi + 1))
    if vtype == SUIT:
        return list(SUIT_ATOMS)
    if vtype == DIST:
        return [tuple(d) for d in DISTRIBUTIONS]
    if vtype == HONORS:
        return [decode(HONORS, c) for c in range(16)]
    if vtype == BOOL:
        return ["yes", "no"]
    raise ValueError(f"no constant domain for type {vtype}")


@dataclass
class _Candidate:
    test: tuple[Literal, ...]
    yes: np.ndarray  # bool over the node's examples


class _Learner:
    def __init__(self, facts: Facts, bias: LanguageBias, params: TreeParams):
        self.facts = facts
        self.bias = bias
        self.params = params
        self.fresh = (f"_V{i}" for i in count())

    # -- candidate tests -------------------------------------------------

    def _literal_modes(self, bound: dict[str, tuple[str, str]]):
        """Ground literal templates: (literal, new variables with their types)."""
        for mode in self.bias.literal_modes:
            d = PREDICATES[mode.pred]
            if d.kind == "test":
                continue
            choices = []
            for a in mode.args:
                if a.kind == "+":
                    if a.vtype == "hand":
                        choices.append([Var(HAND_VAR)])
                    elif a.vtype == "vul":
                        choices.append([Var(VUL_VAR)])
                    else:
                        choices.append([Var(v) for v, (t, _) in bound.items() if t == a.vtype])
                elif a.kind == "#":
                    choices.append(_constants(a.vtype, mode.pred, self.bias))
                else:
                    choices.append([None])
            for combo in product(*choices):
                args, new = [], {}
                for a, c in zip(mode.args, combo):
                    if c is None:
                        name = next(self.fresh)
                        new[name] = (a.vtype, INT_DOMAIN.get(mode.pred, "length"))
                        args.append(Var(name))
                    else:
                        args.append(c)
                yield Literal(mode.pred, tuple(args)), new

    def _var_tests(self, var: str, vtype: str, domain: str) -> Iterator[Literal]:
        preds = self.bias.predicates
        if vtype == INT:
            lo, hi = self.bias.domain(domain)
            if "gteq" in preds:
                for k in range(lo + 1, hi + 1):
                    yield Literal("gteq", (Var(var), k))
            if "lteq" in preds:
                for k in range(lo, hi):
                    yield Literal("lteq", (Var(var), k))
        elif vtype == SUIT:
            for p in ("major", "minor"):
                if p in preds:
                    yield Literal(p, (Var(var),))

    def candidates(self, table: Table, rows: np.ndarray, bound: dict) -> Iterator[_Candidate]:
        pos_of = np.full(len(self.facts), -1, dtype=np.int64)
        pos_of[rows] = np.arange(len(rows))

        def mask_of(t: Table) -> np.ndarray:
            m = np.zeros(len(rows), dtype=bool)
            m[pos_of[t.ex]] = True
            return m

        def var_followups(t: Table, var: str, vtype: str, domain: str, prefix: tuple):
            if vtype == INT:
                col = t.cols[var]
                hi_v = np.full(len(rows), np.iinfo(np.int16).min, dtype=np.int64)
                lo_v = np.full(len(rows), np.iinfo(np.int16).max, dtype=np.int64)
                where = pos_of[t.ex]
                np.maximum.at(hi_v, where, col)
                np.minimum.at(lo_v, where, col)
                for lit in self._var_tests(var, vtype, domain):
                    k = lit.args[1]
                    yes = hi_v >= k if lit.pred == "gteq" else lo_v <= k
                    yield _Candidate(prefix + (lit,), yes)
            else:
                for lit in self._var_tests(var, vtype, domain):
                    yield _Candidate(prefix + (lit,), mask_of(extend(t, lit, self.facts)))

        for var, (vtype, domain) in bound.items():
            yield from var_followups(table, var, vtype, domain, ())
        for lit, new in self._literal_modes(bound):
            t = extend(table, lit, self.facts)
            if not len(t):
                continue
            yield _Candidate((lit,), mask_of(t))
            for var, (vtype, domain) in new.items():
                yield from var_followups(t, var, vtype, domain, (lit,))

    # -- growth ------------------------------------------------------------

    def grow(self, table: Table, rows: np.ndarray, bound: dict, depth: int) -> Node:
        pos = self.facts.positive[rows]
        nb_, np_ = int(pos.sum()), int((~pos).sum())
        leaf = Leaf(Label.BID if nb_ > np_ else Label.PASS, float(len(rows)))
        p = self.params
        if nb_ == 0 or np_ == 0 or len(rows) < 2 * p.min_leaf:
            return leaf
        if p.max_depth is not None and depth >= p.max_depth:
            return leaf

        scored = []
        seen: set[bytes] = set()
        for cand in self.candidates(table, rows, bound):
            ny = int(cand.yes.sum())
            if ny < p.min_leaf or len(rows) - ny < p.min_leaf:
                continue
            key = np.packbits(cand.yes).tobytes()
            if key in seen:  # the same partition from an earlier (simpler) test
                continue
            seen.add(key)
            yb = int((cand.yes & pos).sum())
            gain, ratio = _gain(yb, ny - yb, nb_ - yb, np_ - (ny - yb))
            if gain > 1e-12:
                scored.append((gain, ratio, cand))
        if not scored:
            return leaf
        avg = sum(g for g, _, _ in scored) / len(scored)
        # first candidate with the best ratio among those of at least average gain
        best = max((s for s in scored if s[0] >= avg - 1e-12), key=lambda s: s[1])[2]

        yes_table = _split(table, best.test, self.facts)
        yes_rows = rows[best.yes]
        no_rows = rows[~best.yes]
        new_bound = dict(bound)
        for lit in best.test:
            d = PREDICATES[lit.pred]
            for a, t in zip(lit.args, d.types):
                if isinstance(a, Var) and a.name not in bound and a.name not in (HAND_VAR, VUL_VAR):
                    new_bound[a.name] = (t, INT_DOMAIN.get(lit.pred, "length"))
        in_no = np.zeros(len(self.facts), dtype=bool)
        in_no[no_rows] = True
        return Inner(
            best.test,
            self.grow(yes_table, yes_rows, new_bound, depth + 1),
            self.grow(table.select(in_no[table.ex]), no_rows, bound, depth + 1),
        )


def learn_tree(data: Dataset | Sequence[LabeledExample], bias: LanguageBias,
               params: TreeParams = TreeParams()) -> Tree:
    examples = list(data)
    if not examples:
        raise ValueError("cannot learn a tree from no examples")
    facts = Facts.from_examples(examples)
    rows = np.arange(len(examples))
    learner = _Learner(facts, bias, params)
    return Tree(learner.grow(Table.root(rows), rows, {}, 0))


# ---------------------------------------------------------------------------
# text form


def _tree_var_names() -> Iterator[str]:
    letters = [chr(c) for c in range(ord("F"), ord("Z") + 1)]
    yield from letters
    i = 1
    while True:
        for c in (chr(c) for c in range(ord("A"), ord("Z") + 1)):
            yield f"{c}{i}"
        i += 1


def _render_test(test: Sequence[Literal], names: dict[str, str], fresh: Iterator[str]) -> str:
    parts = []
    for lit in test:
        args = []
        for a in lit.args:
            if isinstance(a, Var):
                if a.name == HAND_VAR:
                    args.append(HAND_VAR)
                elif a.name == VUL_VAR:
                    args.append(TEXT_VUL_VAR)
                elif a.name in names:
                    args.append(names[a.name])
                else:
                    names[a.name] = next(fresh)
                    args.append("-" + names[a.name])
            else:
                args.append(format_term(a))
        parts.append(f"{lit.pred}(" + ",".join(args) + ")")
    return ",".join(parts)


def _render_leaf(leaf: Leaf) -> str:
    text = f"[{leaf.label.value}]"
    if leaf.support is not None:
        text += f" {leaf.support:.1f}"
    return text


def tree_to_text(tree: Tree) -> str:
    lines = [TREE_HEAD]
    fresh = _tree_var_names()

    def node_text(node: Node, names: dict[str, str]) -> str:
        if node.is_leaf:
            return _render_leaf(node)
        return _render_test(node.test, names, fresh) + "? "

    def children(node: Node, names: dict[str, str], prefix: str) -> None:
        if node.is_leaf:
            return
        yes_names = dict(names)
        # names are handed out in preorder: the test, then the yes side, then the no side
        lines.append(prefix + "+--yes: " + node_text(node.yes, yes_names))
        children(node.yes, yes_names, prefix + "|   ")
        no_names = dict(names)
        lines.append(prefix + "+--no:  " + node_text(node.no, no_names))
        children(node.no, no_names, prefix + "    ")

    root_names: dict[str, str] = {}
    lines.append(node_text(tree.root, root_names))
    children(tree.root, root_names, "")
    return "\n".join(lines) + "\n"


def _parse_node_text(text: str) -> tuple[str, object]:
    text = text.rstrip()
    if text.startswith("["):
        label, _, rest = text[1:].partition("]")
        try:
            lab = Label(label)
        except ValueError:
            raise TreeSyntaxError(f"bad leaf label {label!r}") from None
        rest = rest.strip()
        return "leaf", Leaf(lab, float(rest) if rest else None)
    if not text.endswith("?"):
        raise TreeSyntaxError(f"a test must end with '?': {text!r}")
    try:
        lits, _ = parse_conjunction(text[:-1])
    except ClauseSyntaxError as e:
        raise TreeSyntaxError(str(e)) from None
    swap = {TEXT_VUL_VAR: VUL_VAR}
    return "test", tuple(l.rename(swap) for l in lits)


def parse_tree(text: str) -> Tree:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != TREE_HEAD:
        raise TreeSyntaxError(f"a tree starts with {TREE_HEAD}")
    pos = 1

    def node_at(content: str, prefix: str) -> Node:
        nonlocal pos
        kind, value = _parse_node_text(content)
        if kind == "leaf":
            return value
        yes_line = lines[pos] if pos < len(lines) else ""
        if not yes_line.startswith(prefix + "+--yes: "):
            raise TreeSyntaxError(f"expected a yes branch at line {pos + 1}")
        pos += 1
        yes = node_at(yes_line[len(prefix) + 8:], prefix + "|   ")
        no_line = lines[pos] if pos < len(lines) else ""
        if not no_line.startswith(prefix + "+--no:  "):
            raise TreeSyntaxError(f"expected a no branch at line {pos + 1}")
        pos += 1
        no = node_at(no_line[len(prefix) + 8:], prefix + "    ")
        return Inner(value, yes, no)

    if len(lines) < 2:
        raise TreeSyntaxError("a tree needs a root node")
    pos = 2
    root = node_at(lines[1], "")
    if pos != len(lines):
        raise TreeSyntaxError(f"unexpected text at line {pos + 1}")
    return Tree(root)


__all__ = [
    "Inner", "Leaf", "Node", "TREE_HEAD", "Tree", "TreeParams", "TreeSyntaxError",
    "learn_tree", "parse_tree", "tree_to_text",
]
