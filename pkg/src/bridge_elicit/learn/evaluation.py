"""Clause coverage.

The vectorized evaluator keeps a binding table: one row per (example,
variable binding) pair that satisfies the literals so far. Adding a literal
filters rows, adds a column, or (for an unbound suit) multiplies each row
by four. An example is covered when at least one of its rows survives.

The scalar evaluator backtracks over one hand at a time and is used for
single predictions and as an independent cross-check in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from ..cards import Hand, Suit, Vulnerability
from ..predicates import HandFacts, BalanceClass
from .background import PREDICATES, SUIT, Facts, decode, encode, flag_mask, fn_columns, suit_fn_columns, test_mask
from .logic import HAND_VAR, VUL_VAR, Clause, Literal, RuleSet, Var


class UnboundInput(ValueError):
    pass


@dataclass
class Table:
    ex: np.ndarray
    cols: dict[str, np.ndarray]

    def __len__(self) -> int:
        return len(self.ex)

    @classmethod
    def root(cls, rows: np.ndarray) -> "Table":
        return cls(np.asarray(rows, dtype=np.int32), {})

    def covered(self, n: int) -> np.ndarray:
        mask = np.zeros(n, dtype=bool)
        mask[self.ex] = True
        return mask

    def select(self, keep: np.ndarray) -> "Table":
        return Table(self.ex[keep], {k: v[keep] for k, v in self.cols.items()})

    def restrict(self, names) -> "Table":
        """Drop the columns of variables not in ``names``."""
        return Table(self.ex, {k: v for k, v in self.cols.items() if k in names})


def _check_head(arg, name: str) -> None:
    if not (isinstance(arg, Var) and arg.name == name):
        raise UnboundInput(f"expected head variable {name}, got {arg}")


def extend(table: Table, lit: Literal, facts: Facts) -> Table:
    """Rows of ``table`` extended with the bindings that satisfy ``lit``."""
    d = PREDICATES[lit.pred]
    ex = table.ex
    cols = table.cols
    args = lit.args
    if len(args) != len(d.types):
        raise ValueError(f"{lit.pred} takes {len(d.types)} arguments")

    if d.kind == "test":
        values = []
        for a, t in zip(args, d.types):
            if isinstance(a, Var):
                if a.name not in cols:
                    raise UnboundInput(f"{a} is unbound in {lit}")
                values.append(cols[a.name])
            else:
                values.append(encode(t, a))
        return table.select(np.asarray(test_mask(lit.pred, values), dtype=bool) & np.ones(len(ex), bool))

    _check_head(args[0], VUL_VAR if d.types[0] == "vul" else HAND_VAR)
    if d.kind == "flag":
        return table.select(flag_mask(lit.pred, facts, ex))

    new_cols = dict(cols)
    first_value = 1
    if d.kind == "suit_fn":
        first_value = 2
        s = args[1]
        if isinstance(s, Var) and s.name not in cols:
            ex = np.repeat(ex, 4)
            new_cols = {k: np.repeat(v, 4) for k, v in cols.items()}
            suit = np.tile(np.arange(4, dtype=np.int16), len(table.ex))
            new_cols[s.name] = suit
        elif isinstance(s, Var):
            suit = cols[s.name]
        else:
            suit = np.full(len(ex), encode(SUIT, s), dtype=np.int16)
        values = suit_fn_columns(lit.pred, facts, ex, suit)
    else:
        values = fn_columns(lit.pred, facts, ex)

    keep = np.ones(len(ex), dtype=bool)
    for a, t, v in zip(args[first_value:], d.types[first_value:], values):
        if isinstance(a, Var):
            if a.name in new_cols:
                keep &= new_cols[a.name] == v
            else:
                new_cols[a.name] = v
        else:
            keep &= v == encode(t, a)
    out = Table(ex, new_cols)
    return out if keep.all() else out.select(keep)


def clause_table(clause: Clause | Sequence[Literal], facts: Facts, rows=None) -> Table:
    body = clause.body if isinstance(clause, Clause) else clause
    table = Table.root(np.arange(len(facts)) if rows is None else rows)
    for lit in body:
        table = extend(table, lit, facts)
        if not len(table):
            break
    return table


def clause_coverage(clause: Clause, facts: Facts) -> np.ndarray:
    return clause_table(clause, facts).covered(len(facts))


def rules_coverage(rules: RuleSet, facts: Facts) -> np.ndarray:
    """(clauses, examples) boolean matrix of which clause fires where."""
    if not len(rules):
        return np.zeros((0, len(facts)), dtype=bool)
    return np.stack([clause_coverage(c, facts) for c in rules.clauses])


# ---------------------------------------------------------------------------
# scalar evaluation


_BALANCE_PRED = {"balanced": BalanceClass.BALANCED, "semibalanced": BalanceClass.SEMIBALANCED,
                 "unbalanced": BalanceClass.UNBALANCED}


def _hand_solutions(pred: str, f: HandFacts, vul: Vulnerability) -> list[tuple]:
    """Ground argument tuples (after the hand/vul argument), readable form."""
    suits = [s.word for s in Suit]
    if pred == "hcp":
        return [(f.hcp,)]
    if pred == "nbs":
        return [(f.lengths[Suit.SPADE],)]
    if pred == "nb":
        return [(suits[s], f.lengths[s]) for s in Suit]
    if pred == "distribution":
        return [(f.distribution,)]
    if pred == "suit_representation":
        names = {14: "a", 13: "k", 12: "q", 11: "j"}
        return [(suits[s], tuple(names[r] for r in f.honors[s]), f.lengths[s]) for s in Suit]
    if pred in _BALANCE_PRED:
        return [()] if f.balance is _BALANCE_PRED[pred] else []
    if pred == "longest_suit":
        return [(f.longest.word,)]
    if pred == "shortest_suit":
        return [(f.shortest.word,)]
    if pred == "vuln":
        return [("yes" if vul.ns_vulnerable else "no", "yes" if vul.ew_vulnerable else "no")]
    raise KeyError(pred)


def _test(pred: str, values: list) -> bool:
    if pred == "gteq":
        return values[0] >= values[1]
    if pred == "lteq":
        return values[0] <= values[1]
    if pred == "major":
        return values[0] in ("heart", "spade")
    if pred == "minor":
        return values[0] in ("club", "diamond")
    raise KeyError(pred)


def _solve(body: Sequence[Literal], i: int, env: dict, f: HandFacts, vul) -> Iterator[dict]:
    if i == len(body):
        yield env
        return
    lit = body[i]
    if PREDICATES[lit.pred].kind == "test":
        values = []
        for a in lit.args:
            if isinstance(a, Var):
                if a.name not in env:
                    raise UnboundInput(f"{a} is unbound in {lit}")
                values.append(env[a.name])
            else:
                values.append(a)
        if _test(lit.pred, values):
            yield from _solve(body, i + 1, env, f, vul)
        return
    for sol in _hand_solutions(lit.pred, f, vul):
        new = dict(env)
        ok = True
        for a, v in zip(lit.args[1:], sol):
            if isinstance(a, Var):
                if a.name in new:
                    ok = new[a.name] == v
                else:
                    new[a.name] = v
            else:
                ok = a == v
            if not ok:
                break
        if ok:
            yield from _solve(body, i + 1, new, f, vul)


def clause_holds(clause: Clause | Sequence[Literal], hand: Hand, vul: Vulnerability,
                 facts: HandFacts | None = None) -> bool:
    body = clause.body if isinstance(clause, Clause) else tuple(clause)
    f = facts or HandFacts.of(hand)
    return next(_solve(body, 0, {}, f, vul), None) is not None


def solutions(body: Sequence[Literal], hand: Hand, vul: Vulnerability) -> list[dict]:
    """Every satisfying binding (used for bottom clauses and tests)."""
    return list(_solve(tuple(body), 0, {}, HandFacts.of(hand), vul))


__all__ = [
    "Table", "UnboundInput", "clause_coverage", "clause_holds", "clause_table",
    "decode", "extend", "rules_coverage", "solutions",
]
