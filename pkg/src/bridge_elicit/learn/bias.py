"""Language bias: mode declarations, constant domains and search limits.

A mode such as ``nb(+hand,-suit,-int)`` says which arguments must already
be bound (``+``), which introduce variables (``-``) and which are filled
with constants (``#``).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from ..predicates import LANGUAGE_PREDICATES, LanguageId
from .background import PREDICATES

SCHEMA_VERSION = "v1"

# which domain an integer produced by a predicate draws thresholds from
INT_DOMAIN = {"hcp": "hcp", "nbs": "length", "nb": "length", "suit_representation": "length"}
COMPARATORS = ("gteq", "lteq")


class BiasError(ValueError):
    pass


@dataclass(frozen=True)
class ArgMode:
    kind: str  # '+', '-' or '#'
    vtype: str

    def __str__(self) -> str:
        return self.kind + self.vtype


@dataclass(frozen=True)
class Mode:
    pred: str
    args: tuple[ArgMode, ...]

    def __str__(self) -> str:
        return f"{self.pred}(" + ",".join(str(a) for a in self.args) + ")"

    @property
    def is_comparator(self) -> bool:
        return self.pred in COMPARATORS

    @classmethod
    def parse(cls, text: str) -> "Mode":
        m = re.fullmatch(r"\s*([a-z_]+)\((.*)\)\s*", text)
        if not m:
            raise BiasError(f"bad mode {text!r}")
        pred = m.group(1)
        if pred not in PREDICATES:
            raise BiasError(f"unknown predicate {pred!r}")
        args = []
        for a in m.group(2).split(","):
            a = a.strip()
            if not a or a[0] not in "+-#":
                raise BiasError(f"bad argument mode {a!r} in {text!r}")
            args.append(ArgMode(a[0], a[1:]))
        types = PREDICATES[pred].types
        if tuple(a.vtype for a in args) != types:
            raise BiasError(f"{text!r} does not match the signature {pred}{types}")
        if args[0].kind != "+" and PREDICATES[pred].kind != "test":
            raise BiasError(f"the first argument of {pred} must be an input")
        return cls(pred, tuple(args))


@dataclass(frozen=True)
class LanguageBias:
    language: str
    modes: tuple[Mode, ...]
    hcp_range: tuple[int, int] = (0, 25)
    length_range: tuple[int, int] = (0, 13)
    max_depth: int = 2  # variable depth; head variables have depth 0
    max_clause_length: int = 6

    def __post_init__(self) -> None:
        try:
            allowed = LANGUAGE_PREDICATES[LanguageId(self.language)]
        except ValueError:
            allowed = None
        if allowed is not None:
            for m in self.modes:
                if m.pred not in allowed:
                    raise BiasError(f"{m.pred} is not part of language {self.language}")

    def domain(self, name: str) -> tuple[int, int]:
        return self.hcp_range if name == "hcp" else self.length_range

    @property
    def predicates(self) -> frozenset[str]:
        return frozenset(m.pred for m in self.modes)

    @property
    def comparator_modes(self) -> tuple[Mode, ...]:
        return tuple(m for m in self.modes if m.is_comparator)

    @property
    def literal_modes(self) -> tuple[Mode, ...]:
        return tuple(m for m in self.modes if not m.is_comparator)

    def to_json(self) -> dict:
        return {
            "version": SCHEMA_VERSION,
            "language": self.language,
            "modes": [str(m) for m in self.modes],
            "hcp_range": list(self.hcp_range),
            "length_range": list(self.length_range),
            "max_depth": self.max_depth,
            "max_clause_length": self.max_clause_length,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "LanguageBias":
        if doc.get("version") != SCHEMA_VERSION:
            raise BiasError(f"unsupported bias version {doc.get('version')!r}")
        try:
            return cls(
                language=doc.get("language", "custom"),
                modes=tuple(Mode.parse(m) for m in doc["modes"]),
                hcp_range=tuple(doc.get("hcp_range", (0, 25))),
                length_range=tuple(doc.get("length_range", (0, 13))),
                max_depth=int(doc.get("max_depth", 2)),
                max_clause_length=int(doc.get("max_clause_length", 6)),
            )
        except KeyError as e:
            raise BiasError(f"bias document lacks {e}") from None


def load_bias(path: str | Path) -> LanguageBias:
    return LanguageBias.from_json(json.loads(Path(path).read_text()))


def _modes(*texts: str) -> tuple[Mode, ...]:
    return tuple(Mode.parse(t) for t in texts)


_COMMON_L2 = (
    "hcp(+hand,-int)", "hcp(+hand,#int)",
    "nb(+hand,-suit,-int)", "nb(+hand,-suit,#int)",
    "nbs(+hand,-int)", "nbs(+hand,#int)",
    "distribution(+hand,#dist)",
    "gteq(+int,#int)", "lteq(+int,#int)",
)
_L1 = (
    "hcp(+hand,-int)", "hcp(+hand,#int)",
    "nb(+hand,-suit,-int)", "nb(+hand,#suit,-int)", "nb(+hand,-suit,#int)",
    "balanced(+hand)", "semibalanced(+hand)", "unbalanced(+hand)",
    "vuln(+vul,#bool,#bool)",
    "longest_suit(+hand,-suit)", "longest_suit(+hand,#suit)",
    "shortest_suit(+hand,-suit)", "shortest_suit(+hand,#suit)",
    "major(+suit)", "minor(+suit)",
    "gteq(+int,#int)", "lteq(+int,#int)",
)
_L0 = _L1 + (
    "distribution(+hand,#dist)",
    "suit_representation(+hand,#suit,#honors,-int)",
    "suit_representation(+hand,-suit,#honors,-int)",
)


def preset_bias(language: str | LanguageId, **overrides) -> LanguageBias:
    lang = LanguageId(language if isinstance(language, str) else language.value)
    texts = {LanguageId.L0: _L0, LanguageId.L1: _L1, LanguageId.L2: _COMMON_L2}[lang]
    return LanguageBias(lang.value, _modes(*texts), **overrides)


EMPTY_BIAS = LanguageBias("empty", ())
