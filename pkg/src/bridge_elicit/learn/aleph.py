"""Rule induction by bottom-clause search.

``bottom_clause`` saturates a seed example: every literal allowed by the
mode declarations that is true of the seed, with one variable per
(type, value) pair so that equal values share a variable. A clause search
then walks the subsets of the bottom clause general-to-specific with a
beam, scoring clauses by positives minus negatives covered.

``induce`` is the classic covering loop (seed = first uncovered positive);
``induce_max`` searches from every positive and then picks a subset of the
resulting clauses with a greedy set cover, which makes it independent of
example order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

import numpy as np

from ..cards import Hand, Vulnerability
from ..predicates import HandFacts
from ..records import Dataset, LabeledExample
from .background import INT, PREDICATES, Facts
from .bias import INT_DOMAIN, LanguageBias
from .evaluation import Table, _hand_solutions, _test, clause_coverage, extend
from .logic import HAND_VAR, HEAD_VARS, VUL_VAR, Clause, Literal, RuleSet, Var, var_names

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# bottom clause


@dataclass
class BottomClause:
    literals: list[Literal]
    inputs: list[frozenset[str]]  # variables each literal needs bound
    outputs: list[frozenset[str]]  # variables each literal may introduce

    def __len__(self) -> int:
        return len(self.literals)

    def clause(self) -> Clause:
        return Clause(tuple(self.literals))

    def ordered(self, indices) -> list[int]:
        """Bottom-clause order, delaying a literal until its inputs are bound."""
        pending = sorted(indices)
        bound = set(HEAD_VARS)
        out: list[int] = []
        while pending:
            for k, j in enumerate(pending):
                if self.inputs[j] <= bound:
                    out.append(j)
                    bound |= self.outputs[j]
                    del pending[k]
                    break
            else:
                raise ValueError("literals cannot be chained")
        return out

    def subclause(self, indices) -> Clause:
        return Clause(tuple(self.literals[j] for j in self.ordered(indices)))


def bottom_clause(hand: Hand, vul: Vulnerability, bias: LanguageBias) -> BottomClause:
    """Most specific clause of the seed ``(hand, vul)`` under ``bias``."""
    facts = HandFacts.of(hand)
    names = var_names()
    var_of: dict[tuple[str, object], str] = {("hand", "seed"): HAND_VAR, ("vul", "seed"): VUL_VAR}
    value: dict[str, object] = {HAND_VAR: hand, VUL_VAR: vul}
    vtype: dict[str, str] = {HAND_VAR: "hand", VUL_VAR: "vul"}
    depth: dict[str, int] = {HAND_VAR: 0, VUL_VAR: 0}
    domains: dict[str, tuple[int, int]] = {}
    literals: list[Literal] = []
    inputs: list[frozenset[str]] = []
    outputs: list[frozenset[str]] = []
    seen: set[Literal] = set()

    def var_for(t: str, v, d: int) -> str:
        key = (t, v)
        if key not in var_of:
            name = next(names)
            var_of[key] = name
            value[name], vtype[name], depth[name] = v, t, d
        return var_of[key]

    for d in range(1, bias.max_depth + 1):
        available = [n for n in value if depth[n] < d]
        for mode in bias.literal_modes:
            pdef = PREDICATES[mode.pred]
            in_pos = [i for i, a in enumerate(mode.args) if a.kind == "+"]
            choices = [[n for n in available if vtype[n] == mode.args[i].vtype] for i in in_pos]
            for combo in product(*choices):
                bound = dict(zip(in_pos, combo))
                if pdef.kind == "test":
                    if not _test(mode.pred, [value[bound[i]] for i in range(len(mode.args))]):
                        continue
                    sols = [()]
                    arg_offset = len(mode.args)
                else:
                    sols = _hand_solutions(mode.pred, facts, vul)
                    arg_offset = 1
                for sol in sols:
                    full = [value[bound[0]]] + list(sol) if pdef.kind != "test" else [value[bound[i]] for i in range(len(mode.args))]
                    # inputs beyond the first must match the solution
                    if any(i >= arg_offset and value[bound[i]] != full[i] for i in in_pos):
                        continue
                    args = []
                    outs = []
                    for i, a in enumerate(mode.args):
                        if a.kind == "+":
                            args.append(Var(bound[i]))
                        elif a.kind == "-":
                            n = var_for(a.vtype, full[i], d)
                            if a.vtype == INT:
                                lo, hi = bias.domain(INT_DOMAIN.get(mode.pred, "length"))
                                old = domains.get(n, (lo, hi))
                                domains[n] = (min(lo, old[0]), max(hi, old[1]))
                            args.append(Var(n))
                            outs.append(n)
                        else:
                            args.append(full[i])
                    lit = Literal(mode.pred, tuple(args))
                    if lit not in seen:
                        seen.add(lit)
                        literals.append(lit)
                        inputs.append(frozenset(bound[i] for i in in_pos))
                        outputs.append(frozenset(outs))

    # comparators go right after the first literal that introduces their variable
    ordered_lits, ordered_in, ordered_out = [], [], []
    placed: set[str] = set()
    comparator_modes = bias.comparator_modes
    for lit, ins, outs in zip(literals, inputs, outputs):
        ordered_lits.append(lit)
        ordered_in.append(ins)
        ordered_out.append(outs)
        for n in [v.name for v in lit.variables if v.name in outs and v.name not in placed]:
            placed.add(n)
            if vtype[n] != INT:
                continue
            lo, hi = domains.get(n, bias.length_range)
            x = value[n]
            for mode in comparator_modes:
                if mode.pred == "gteq":
                    ks = range(lo + 1, min(x, hi) + 1)
                else:
                    ks = range(max(x, lo), hi)
                for k in ks:
                    ordered_lits.append(Literal(mode.pred, (Var(n), k)))
                    ordered_in.append(frozenset({n}))
                    ordered_out.append(frozenset())
    return BottomClause(ordered_lits, ordered_in, ordered_out)


def example_bottom(example: LabeledExample, bias: LanguageBias) -> BottomClause:
    return bottom_clause(example.south, example.vul, bias)


# ---------------------------------------------------------------------------
# clause search


@dataclass(frozen=True)
class SearchParams:
    beam_width: int = 64
    max_clause_length: int | None = None  # defaults to the bias limit
    min_pos: int = 2
    noise: int = 0  # negatives a clause may cover


@dataclass
class _State:
    indices: frozenset[int]
    table: Table | None  # built lazily for comparator children
    bound: frozenset[str]
    p: int
    n: int
    parent: "_State | None" = None
    last: int = -1

    def materialize(self, bottom: BottomClause, facts: Facts) -> Table:
        if self.table is None:
            self.table = extend(self.parent.materialize(bottom, facts), bottom.literals[self.last], facts)
        return self.table


@dataclass
class Found:
    clause: Clause
    p: int
    n: int
    text: str = field(init=False)

    def __post_init__(self):
        self.clause = self.clause.canonical()
        self.text = self.clause.to_text()

    @property
    def score(self) -> int:
        return self.p - self.n


def _segments(ex: np.ndarray) -> np.ndarray:
    """Start offsets of the runs of equal example ids (rows stay sorted by id)."""
    if not len(ex):
        return np.zeros(0, dtype=np.intp)
    first = np.empty(len(ex), dtype=bool)
    first[0] = True
    np.not_equal(ex[1:], ex[:-1], out=first[1:])
    return np.flatnonzero(first)


def _counts(table: Table, pos: np.ndarray, neg: np.ndarray) -> tuple[int, int]:
    u = table.ex[_segments(table.ex)]
    return int(pos[u].sum()), int(neg[u].sum())


_VMAX = 64


class _ThresholdCounts:
    """(p, n) of ``gteq(X,k)`` / ``lteq(X,k)`` for every k at once: an example
    passes gteq(X,k) iff its largest binding of X is at least k."""

    def __init__(self, table: Table, starts: np.ndarray, var: str, pos: np.ndarray, neg: np.ndarray):
        v = table.cols[var].astype(np.intp)
        u = table.ex[starts]
        vmax = np.maximum.reduceat(v, starts)
        vmin = np.minimum.reduceat(v, starts)
        ip, ineg = pos[u], neg[u]
        self.p_ge = np.bincount(vmax[ip], minlength=_VMAX)[::-1].cumsum()[::-1]
        self.n_ge = np.bincount(vmax[ineg], minlength=_VMAX)[::-1].cumsum()[::-1]
        self.p_le = np.bincount(vmin[ip], minlength=_VMAX).cumsum()
        self.n_le = np.bincount(vmin[ineg], minlength=_VMAX).cumsum()
        self.lo, self.hi = int(v.min()), int(v.max())

    def get(self, op: str, k: int) -> tuple[int, int, bool]:
        """(p, n, filters_something)."""
        k = min(max(k, 0), _VMAX - 1)
        if op == "gteq":
            return int(self.p_ge[k]), int(self.n_ge[k]), self.lo < k
        return int(self.p_le[k]), int(self.n_le[k]), self.hi > k


def search_clause(bottom: BottomClause, facts: Facts, pos: np.ndarray, neg: np.ndarray,
                  params: SearchParams, max_len: int) -> Found | None:
    """Best acceptable subset of ``bottom``: most positives minus negatives,
    then shortest, then lexicographically smallest text."""
    rows = np.flatnonzero(pos | neg).astype(np.int32)
    root = Table.root(rows)
    p0, n0 = _counts(root, pos, neg)
    best: Found | None = None
    comparator = [
        (lit.args[0].name, lit.pred, lit.args[1])
        if lit.pred in ("gteq", "lteq") and isinstance(lit.args[0], Var) and not isinstance(lit.args[1], Var)
        else None
        for lit in bottom.literals
    ]

    def offer(st: _State) -> None:
        nonlocal best
        if st.p < params.min_pos or st.n > params.noise:
            return
        score = st.p - st.n
        if best is not None and score < best.score:
            return
        cand = Found(bottom.subclause(st.indices), st.p, st.n)
        if best is None or (score, -len(cand.clause), _neg_text(cand.text)) > (best.score, -len(best.clause), _neg_text(best.text)):
            best = cand

    start = _State(frozenset(), root, frozenset(HEAD_VARS), p0, n0)
    offer(start)
    beam = [start]
    seen: set[frozenset[int]] = set()
    for level in range(1, max_len + 1):
        children: list[_State] = []
        for st in beam:
            table = st.materialize(bottom, facts)
            starts = None
            thresholds: dict[str, _ThresholdCounts] = {}
            for j in range(len(bottom)):
                if j in st.indices or not bottom.inputs[j] <= st.bound:
                    continue
                key = st.indices | {j}
                if key in seen:
                    continue
                seen.add(key)
                cmp_ = comparator[j]
                if cmp_ is not None:
                    var, op, k = cmp_
                    if var not in thresholds:
                        if starts is None:
                            starts = _segments(table.ex)
                        thresholds[var] = _ThresholdCounts(table, starts, var, pos, neg)
                    p, n, filters = thresholds[var].get(op, k)
                    if not filters:
                        continue
                    child = _State(key, None, st.bound, p, n, st, j)
                else:
                    t = extend(table, bottom.literals[j], facts)
                    new_vars = bottom.outputs[j] - st.bound
                    if not new_vars and len(t) == len(table):
                        continue  # the literal filters nothing, now or later
                    p, n = _counts(t, pos, neg)
                    child = _State(key, t, st.bound | new_vars, p, n)
                if p < params.min_pos:
                    continue
                offer(child)
                children.append(child)
        bar = best.score if best is not None else -1
        # refinements cannot cover more positives, so p bounds any descendant's score
        children = [c for c in children if c.p > bar]
        if not children or level == max_len:
            break
        children.sort(key=lambda c: (-(c.p - c.n), -c.p, sorted(c.indices)))
        beam = children[: params.beam_width]
    return best


def _neg_text(text: str) -> tuple:
    # larger tuple = lexicographically smaller text
    return tuple(-ord(c) for c in text) + (0,)


# ---------------------------------------------------------------------------
# covering strategies


def _prepare(data: Dataset | Sequence[LabeledExample]):
    examples = list(data)
    facts = Facts.from_examples(examples)
    return examples, facts, facts.positive.copy(), ~facts.positive


def induce(data: Dataset | Sequence[LabeledExample], bias: LanguageBias,
           params: SearchParams = SearchParams()) -> RuleSet:
    """Sequential covering: the first uncovered positive seeds each clause.
    A seed with no acceptable clause is set aside and covering continues."""
    examples, facts, pos, neg = _prepare(data)
    max_len = params.max_clause_length or bias.max_clause_length
    uncovered = pos.copy()
    skipped = np.zeros(len(examples), dtype=bool)
    clauses: list[Clause] = []
    while True:
        open_seeds = np.flatnonzero(uncovered & ~skipped)
        if not len(open_seeds):
            break
        seed = int(open_seeds[0])
        found = search_clause(example_bottom(examples[seed], bias), facts, uncovered, neg, params, max_len)
        if found is None:
            skipped[seed] = True
            continue
        clauses.append(found.clause)
        uncovered &= ~clause_coverage(found.clause, facts)
        log.debug("induce: %s covers %d new", found.text.replace("\n", " "), found.p)
    return RuleSet(tuple(clauses))


def induce_max(data: Dataset | Sequence[LabeledExample], bias: LanguageBias,
               params: SearchParams = SearchParams()) -> RuleSet:
    """Best clause for every positive, then a greedy cover of the positives."""
    examples, facts, pos, neg = _prepare(data)
    max_len = params.max_clause_length or bias.max_clause_length
    found: dict[str, Found] = {}
    bottoms_done: set[tuple[int, str]] = set()
    for i in np.flatnonzero(pos):
        e = examples[int(i)]
        key = (e.south.mask, e.vul.code)
        if key in bottoms_done:
            continue
        bottoms_done.add(key)
        f = search_clause(example_bottom(e, bias), facts, pos, neg, params, max_len)
        if f is not None:
            found.setdefault(f.text, f)

    candidates = sorted(found.values(), key=lambda f: f.text)
    cover = {f.text: clause_coverage(f.clause, facts) for f in candidates}
    covered = np.zeros(len(examples), dtype=bool)
    chosen: list[Clause] = []
    remaining = list(candidates)
    while remaining:
        def gain(f: Found):
            c = cover[f.text]
            return (int((c & pos & ~covered).sum()), -int((c & neg).sum()), -len(f.clause))

        best = max(remaining, key=gain)  # max keeps the first (smallest text) among ties
        if gain(best)[0] == 0:
            break
        chosen.append(best.clause)
        covered |= cover[best.text]
        remaining.remove(best)
    return RuleSet(tuple(chosen))
