"""Terms, literals, clauses and rule sets in Prolog-like text syntax.

A rule set prints as::

    decision(A,4,B,C,bid) :-
       hcp(A,D), gteq(D,9), nbs(A,1).

and parses back to an identical object; re-printing is byte-identical.
The head is fixed: ``A`` is South's hand, ``B`` the vulnerability and
``C`` the dealer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

HEAD_TEXT = "decision(A,4,B,C,bid)"
HAND_VAR = "A"
VUL_VAR = "B"
DEALER_VAR = "C"
HEAD_VARS = (HAND_VAR, VUL_VAR, DEALER_VAR)


class ClauseSyntaxError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


Term = "Var | int | str | tuple"


def format_term(t) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, tuple):
        return "[" + ",".join(format_term(x) for x in t) + "]"
    return str(t)


@dataclass(frozen=True)
class Literal:
    pred: str
    args: tuple

    def __str__(self) -> str:
        return f"{self.pred}(" + ",".join(format_term(a) for a in self.args) + ")"

    @property
    def variables(self) -> tuple[Var, ...]:
        return tuple(a for a in self.args if isinstance(a, Var))

    def rename(self, mapping: dict[str, str]) -> "Literal":
        return Literal(
            self.pred,
            tuple(Var(mapping.get(a.name, a.name)) if isinstance(a, Var) else a for a in self.args),
        )


def var_names() -> Iterator[str]:
    """D, E, ..., Z, then A1, B1, ... for fresh variables."""
    letters = [chr(c) for c in range(ord("A"), ord("Z") + 1)]
    for c in letters[3:]:
        yield c
    i = 1
    while True:
        for c in letters:
            yield f"{c}{i}"
        i += 1


def canonical_names(literals: Sequence[Literal], fixed: Iterable[str] = HEAD_VARS) -> dict[str, str]:
    """Rename non-head variables D, E, ... by first appearance."""
    fixed = set(fixed)
    mapping = {v: v for v in fixed}
    fresh = var_names()
    for lit in literals:
        for v in lit.variables:
            if v.name not in mapping:
                mapping[v.name] = next(fresh)
    return mapping


@dataclass(frozen=True)
class Clause:
    body: tuple[Literal, ...] = ()

    def __len__(self) -> int:
        return len(self.body)

    def canonical(self) -> "Clause":
        m = canonical_names(self.body)
        return Clause(tuple(lit.rename(m) for lit in self.body))

    def to_text(self) -> str:
        if not self.body:
            return HEAD_TEXT + "."
        return HEAD_TEXT + " :-\n   " + ", ".join(str(l) for l in self.body) + "."

    def __str__(self) -> str:
        return self.to_text()

    @property
    def variables(self) -> list[Var]:
        seen: dict[Var, None] = {}
        for lit in self.body:
            for v in lit.variables:
                seen.setdefault(v)
        return list(seen)


@dataclass(frozen=True)
class RuleSet:
    """Predicts bid when any clause fires, pass otherwise."""

    clauses: tuple[Clause, ...] = ()

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self):
        return iter(self.clauses)

    def to_text(self) -> str:
        return "".join(c.to_text() + "\n" for c in self.clauses)

    def same_clauses(self, other: "RuleSet") -> bool:
        return {c.canonical() for c in self.clauses} == {c.canonical() for c in other.clauses}


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(:-)|([A-Za-z_][A-Za-z0-9_]*)|(-?\d+)|([(),.\[\]?-]))")


def _tokens(text: str) -> list[str]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ClauseSyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        tok = next(g for g in m.groups() if g is not None)
        out.append(tok)
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ClauseSyntaxError(f"expected {expected!r}, got {tok!r}")
        self.i += 1
        return tok

    def term(self, marks: set | None = None):
        tok = self.take()
        if tok == "-" and marks is not None:
            name = self.take()
            if not name[0].isupper():
                raise ClauseSyntaxError(f"'-' must prefix a variable, got {name!r}")
            marks.add(name)
            return Var(name)
        if tok == "[":
            items = []
            if self.peek() != "]":
                items.append(self.term())
                while self.peek() == ",":
                    self.take()
                    items.append(self.term())
            self.take("]")
            return tuple(items)
        if tok.lstrip("-").isdigit():
            return int(tok)
        if tok[0].isupper() or tok[0] == "_":
            return Var(tok)
        if tok[0].isalpha():
            return tok
        raise ClauseSyntaxError(f"unexpected token {tok!r}")

    def literal(self, marks: set | None = None) -> Literal:
        name = self.take()
        if not name[0].islower():
            raise ClauseSyntaxError(f"bad predicate name {name!r}")
        self.take("(")
        args = [self.term(marks)]
        while self.peek() == ",":
            self.take()
            args.append(self.term(marks))
        self.take(")")
        return Literal(name, tuple(args))

    def conjunction(self, marks: set | None = None) -> list[Literal]:
        lits = [self.literal(marks)]
        while self.peek() == ",":
            self.take()
            lits.append(self.literal(marks))
        return lits


_HEAD = Literal("decision", (Var("A"), 4, Var("B"), Var("C"), "bid"))


def parse_clause(text: str) -> Clause:
    p = _Parser(text)
    head = p.literal()
    if head != _HEAD:
        raise ClauseSyntaxError(f"head must be {HEAD_TEXT}, got {head}")
    body: list[Literal] = []
    if p.peek() == ":-":
        p.take()
        body = p.conjunction()
    p.take(".")
    if p.peek() is not None:
        raise ClauseSyntaxError("trailing text after clause")
    return Clause(tuple(body))


def split_clauses(text: str) -> list[str]:
    """Split a rule file on clause-terminating periods."""
    out = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "." and depth == 0:
            out.append(text[start:i + 1])
            start = i + 1
    if text[start:].strip():
        raise ClauseSyntaxError("unterminated clause at end of text")
    return [c.strip() for c in out if c.strip()]


def parse_rules(text: str) -> RuleSet:
    lines = [ln for ln in text.splitlines() if not ln.lstrip().startswith("%")]
    return RuleSet(tuple(parse_clause(c) for c in split_clauses("\n".join(lines))))


def parse_conjunction(text: str) -> tuple[list[Literal], set[str]]:
    """Parse ``nb(A,-F,-G),gteq(G,6)``; returns literals and the names
    marked as newly introduced with ``-``."""
    marks: set[str] = set()
    p = _Parser(text)
    lits = p.conjunction(marks)
    if p.peek() is not None:
        raise ClauseSyntaxError(f"trailing text in {text!r}")
    return lits, marks
