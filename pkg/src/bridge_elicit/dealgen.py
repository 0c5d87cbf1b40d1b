"""Constraint language for bidding-rule filters and a rejection-sampling
deal generator.

Constraints are small immutable trees. Each node evaluates two ways: on a
single :class:`~bridge_elicit.cards.Deal` through the predicate functions,
and on a numpy batch of candidate deals during generation. The generator
only ever uses the batch route; the scalar route is what callers use to
check its output.

Candidates are drawn in fixed-size batches. Batch ``b`` has its own RNG
seeded from ``(seed, stream, b)``, so the accepted sequence is the same
whatever the number of worker threads.
"""

from __future__ import annotations

import json
import logging
import operator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from math import comb
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.stats import hypergeom

from .cards import Deal, Hand, Seat, Suit, Vulnerability, deal_from_masks, read_deals, write_deals
from .predicates import distribution, hcp, nb

log = logging.getLogger(__name__)

SCHEMA_VERSION = "v1"

OPS = {
    "<": operator.lt,
    "<=": operator.le,
    "=": operator.eq,
    ">=": operator.ge,
    ">": operator.gt,
}
_OP_ALIASES = {"≤": "<=", "≥": ">=", "==": "=", "eq": "=", "le": "<=", "ge": ">=", "lt": "<", "gt": ">"}

HONOR_RANKS = {"A": 14, "K": 13, "Q": 12, "J": 11, "T": 10}
VUL_ORDER = (Vulnerability.NONE, Vulnerability.NS, Vulnerability.EW, Vulnerability.BOTH)
_VUL_INDEX = {v: i for i, v in enumerate(VUL_ORDER)}


class AcceptanceRateTooLow(RuntimeError):
    """The constraint is (close to) unsatisfiable under the sampling scheme."""


def _norm_op(op: str) -> str:
    op = _OP_ALIASES.get(op, op)
    if op not in OPS:
        raise ValueError(f"unknown comparison {op!r}")
    return op


def _honor_set(honors) -> frozenset[int]:
    if isinstance(honors, str):
        return frozenset(HONOR_RANKS[c] for c in honors.upper())
    return frozenset(int(h) for h in honors)


def _honor_text(honors: frozenset[int]) -> str:
    inv = {v: k for k, v in HONOR_RANKS.items()}
    return "".join(inv[r] for r in sorted(honors, reverse=True))


# ---------------------------------------------------------------------------
# batch features


class Batch:
    """Card owners for a batch of candidate deals.

    Per-seat features are computed on first use, so a filter that only looks
    at West never pays for the other three hands.
    """

    _WEIGHTS = (1 << np.arange(13)).astype(np.int32)
    _HCPW = np.array([0] * 9 + [1, 2, 3, 4], dtype=np.int8)

    def __init__(self, owners: np.ndarray, vul: np.ndarray):
        self.owners = owners  # (B, 52) seat per card
        self.vul = vul  # (B,) index into VUL_ORDER
        self._cache: dict = {}

    def __len__(self) -> int:
        return len(self.vul)

    def take(self, rows: np.ndarray) -> "Batch":
        return Batch(self.owners[rows], self.vul[rows])

    def _get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def held(self, seat: int) -> np.ndarray:
        """(B, suit, rank) bool."""
        return self._get(("held", seat), lambda: (self.owners == seat).reshape(-1, 4, 13))

    def lengths(self, seat: int) -> np.ndarray:
        return self._get(("len", seat), lambda: self.held(seat).sum(axis=2, dtype=np.int8))

    def hcp(self, seat: int) -> np.ndarray:
        return self._get(("hcp", seat), lambda: (self.held(seat) * self._HCPW).sum(axis=(1, 2)))

    def masks(self, seat: int) -> np.ndarray:
        return self._get(("mask", seat), lambda: self.held(seat) @ self._WEIGHTS)

    def dist(self, seat: int) -> np.ndarray:
        return self._get(("dist", seat), lambda: -np.sort(-self.lengths(seat), axis=1))


_POPCOUNT = np.array([bin(i).count("1") for i in range(1 << 13)], dtype=np.int8)


@dataclass(frozen=True)
class BoundContext:
    """What the sampler holds fixed, for acceptance-rate upper bounds."""

    south: Hand | None = None
    vul: Vulnerability | None = None


def _pool(seat: Seat, ctx: BoundContext, suit_cards: Sequence[int]) -> tuple[int, int] | None:
    """(pool size, available cards of interest) for a seat's 13-card draw."""
    if ctx.south is None:
        return 52, len(suit_cards)
    if seat is Seat.SOUTH:
        return None
    held = sum(1 for c in suit_cards if ctx.south.mask >> c & 1)
    return 39, len(suit_cards) - held


def _hyper_prob(pool: int, good: int, op: str, k: int) -> float:
    xs = np.arange(0, 14)
    pmf = hypergeom(pool, good, 13).pmf(xs)
    return float(pmf[OPS[op](xs, k)].sum())


# ---------------------------------------------------------------------------
# constraint nodes


class Constraint:
    def evaluate(self, deal: Deal) -> bool:
        raise NotImplementedError

    def batch(self, b: Batch) -> np.ndarray:
        raise NotImplementedError

    def to_json(self):
        raise NotImplementedError

    def upper_bound(self, ctx: BoundContext) -> float:
        return 1.0

    def __and__(self, other: "Constraint") -> "And":
        return And((self, other))

    def __or__(self, other: "Constraint") -> "Or":
        return Or((self, other))

    def __invert__(self) -> "Not":
        return Not(self)


@dataclass(frozen=True)
class SuitLen(Constraint):
    seat: Seat
    suit: Suit
    op: str
    k: int

    def __post_init__(self):
        object.__setattr__(self, "op", _norm_op(self.op))

    def evaluate(self, deal):
        return OPS[self.op](nb(deal[self.seat], self.suit), self.k)

    def batch(self, b):
        return OPS[self.op](b.lengths(self.seat)[:, self.suit], self.k)

    def to_json(self):
        return {"suit_len": {"seat": self.seat.name.lower(), "suit": self.suit.word, "op": self.op, "k": self.k}}

    def upper_bound(self, ctx):
        pool = _pool(self.seat, ctx, range(13 * self.suit, 13 * self.suit + 13))
        if pool is None:
            return float(self.evaluate_south(ctx.south))
        return _hyper_prob(*pool, self.op, self.k)

    def evaluate_south(self, south: Hand) -> bool:
        return OPS[self.op](nb(south, self.suit), self.k)


@dataclass(frozen=True)
class HonorCount(Constraint):
    """How many of ``honors`` (e.g. A, K, Q, J) the seat holds in ``suit``."""

    seat: Seat
    suit: Suit
    honors: frozenset
    op: str
    k: int

    def __post_init__(self):
        object.__setattr__(self, "op", _norm_op(self.op))
        object.__setattr__(self, "honors", _honor_set(self.honors))

    @property
    def _bits(self) -> int:
        return sum(1 << (r - 2) for r in self.honors)

    def _count(self, hand: Hand) -> int:
        return (hand.suit_mask(self.suit) & self._bits).bit_count()

    def evaluate(self, deal):
        return OPS[self.op](self._count(deal[self.seat]), self.k)

    def batch(self, b):
        held = _POPCOUNT[b.masks(self.seat)[:, self.suit] & self._bits]
        return OPS[self.op](held, self.k)

    def to_json(self):
        return {
            "honors": {
                "seat": self.seat.name.lower(), "suit": self.suit.word,
                "honors": _honor_text(self.honors), "op": self.op, "k": self.k,
            }
        }

    def upper_bound(self, ctx):
        cards = [13 * self.suit + r - 2 for r in self.honors]
        pool = _pool(self.seat, ctx, cards)
        if pool is None:
            return float(OPS[self.op](self._count(ctx.south), self.k))
        return _hyper_prob(*pool, self.op, self.k)


@dataclass(frozen=True)
class HcpCmp(Constraint):
    seat: Seat
    op: str
    k: int

    def __post_init__(self):
        object.__setattr__(self, "op", _norm_op(self.op))

    def evaluate(self, deal):
        return OPS[self.op](hcp(deal[self.seat]), self.k)

    def batch(self, b):
        return OPS[self.op](b.hcp(self.seat), self.k)

    def to_json(self):
        return {"hcp": {"seat": self.seat.name.lower(), "op": self.op, "k": self.k}}

    def upper_bound(self, ctx):
        if ctx.south is not None and self.seat is Seat.SOUTH:
            return float(OPS[self.op](hcp(ctx.south), self.k))
        return 1.0


@dataclass(frozen=True)
class DistEquals(Constraint):
    """Sorted shape equals ``pattern``, e.g. (7, 3, 2, 1)."""

    seat: Seat
    pattern: tuple

    def __post_init__(self):
        p = tuple(sorted((int(x) for x in self.pattern), reverse=True))
        if len(p) != 4 or sum(p) != 13:
            raise ValueError(f"not a distribution: {self.pattern}")
        object.__setattr__(self, "pattern", p)

    def evaluate(self, deal):
        return distribution(deal[self.seat]) == self.pattern

    def batch(self, b):
        return np.all(b.dist(self.seat) == np.array(self.pattern), axis=1)

    def to_json(self):
        return {"dist": {"seat": self.seat.name.lower(), "pattern": list(self.pattern)}}

    def upper_bound(self, ctx):
        if ctx.south is None:
            avail, pool = [13] * 4, 52
        elif self.seat is Seat.SOUTH:
            return float(distribution(ctx.south) == self.pattern)
        else:
            avail, pool = [13 - nb(ctx.south, s) for s in Suit], 39
        total = 0
        for shape in set(permutations(self.pattern)):
            ways = 1
            for a, l in zip(avail, shape):
                ways *= comb(a, l)
            total += ways
        return total / comb(pool, 13)


@dataclass(frozen=True)
class DistTemplate(Constraint):
    """Conditions on sorted suit lengths: ``terms`` are (index, op, k) with
    index 0 the longest suit. ``7mpq with m >= 4`` is ((0,'=',7), (1,'>=',4))."""

    seat: Seat
    terms: tuple

    def __post_init__(self):
        terms = tuple((int(i), _norm_op(op), int(k)) for i, op, k in self.terms)
        object.__setattr__(self, "terms", terms)

    def evaluate(self, deal):
        d = distribution(deal[self.seat])
        return all(OPS[op](d[i], k) for i, op, k in self.terms)

    def batch(self, b):
        out = np.ones(len(b), dtype=bool)
        for i, op, k in self.terms:
            out &= OPS[op](b.dist(self.seat)[:, i], k)
        return out

    def to_json(self):
        return {
            "dist_template": {
                "seat": self.seat.name.lower(),
                "terms": [{"index": i, "op": op, "k": k} for i, op, k in self.terms],
            }
        }


@dataclass(frozen=True)
class VulnIs(Constraint):
    vul: Vulnerability

    def evaluate(self, deal):
        return deal.vulnerability is self.vul

    def batch(self, b):
        return b.vul == _VUL_INDEX[self.vul]

    def to_json(self):
        return {"vul": self.vul.code}

    def upper_bound(self, ctx):
        if ctx.vul is not None:
            return float(ctx.vul is self.vul)
        return 0.25


@dataclass(frozen=True)
class Not(Constraint):
    child: Constraint

    def evaluate(self, deal):
        return not self.child.evaluate(deal)

    def batch(self, b):
        return ~self.child.batch(b)

    def to_json(self):
        return {"not": self.child.to_json()}


@dataclass(frozen=True)
class And(Constraint):
    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    def evaluate(self, deal):
        return all(c.evaluate(deal) for c in self.children)

    def batch(self, b):
        # filter progressively: later children only see surviving rows
        out = np.ones(len(b), dtype=bool)
        rows = np.arange(len(b))
        sub = b
        for c in self.children:
            keep = c.batch(sub)
            if not keep.all():
                rows = rows[keep]
                sub = sub.take(keep)
            if len(rows) == 0:
                break
        out[:] = False
        out[rows] = True
        return out

    def to_json(self):
        return {"and": [c.to_json() for c in self.children]}

    def upper_bound(self, ctx):
        return min((c.upper_bound(ctx) for c in self.children), default=1.0)


@dataclass(frozen=True)
class Or(Constraint):
    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    def evaluate(self, deal):
        return any(c.evaluate(deal) for c in self.children)

    def batch(self, b):
        out = np.zeros(len(b), dtype=bool)
        for c in self.children:
            out |= c.batch(b)
        return out

    def to_json(self):
        return {"or": [c.to_json() for c in self.children]}

    def upper_bound(self, ctx):
        return min(1.0, sum(c.upper_bound(ctx) for c in self.children))


TRUE = And(())
FALSE = Or(())


def eval_constraint(expr: Constraint, deal: Deal) -> bool:
    return expr.evaluate(deal)


# ---------------------------------------------------------------------------
# JSON


def _seat(obj) -> Seat:
    return Seat[obj.upper()] if len(obj) > 1 else Seat.from_text(obj)


def constraint_from_json(obj, refs: Mapping[str, Constraint] | None = None) -> Constraint:
    """Build a constraint from its JSON form; ``{"ref": name}`` looks up ``refs``."""
    refs = refs or {}
    if obj is True:
        return TRUE
    if obj is False:
        return FALSE
    if isinstance(obj, str):
        return refs[obj]
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ValueError(f"a constraint node is a single-key object, got {obj!r}")
    (kind, arg), = obj.items()
    if kind == "and":
        return And(tuple(constraint_from_json(c, refs) for c in arg))
    if kind == "or":
        return Or(tuple(constraint_from_json(c, refs) for c in arg))
    if kind == "not":
        return Not(constraint_from_json(arg, refs))
    if kind == "ref":
        if arg not in refs:
            raise ValueError(f"unknown rule reference {arg!r}")
        return refs[arg]
    if kind == "vul":
        return VulnIs(Vulnerability.from_text(arg))
    seat = _seat(arg["seat"])
    if kind == "suit_len":
        return SuitLen(seat, Suit.from_text(arg["suit"]), arg["op"], int(arg["k"]))
    if kind == "hcp":
        return HcpCmp(seat, arg["op"], int(arg["k"]))
    if kind == "honors":
        return HonorCount(seat, Suit.from_text(arg["suit"]), arg["honors"], arg["op"], int(arg["k"]))
    if kind == "dist":
        return DistEquals(seat, tuple(arg["pattern"]))
    if kind == "dist_template":
        return DistTemplate(seat, tuple((t["index"], t["op"], t["k"]) for t in arg["terms"]))
    raise ValueError(f"unknown constraint kind {kind!r}")


@dataclass
class RuleFile:
    rules: dict[str, Constraint]
    constraint: Constraint
    report: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "version": SCHEMA_VERSION,
            "rules": {k: v.to_json() for k, v in self.rules.items()},
            "constraint": self.constraint.to_json(),
            "report": list(self.report),
        }


def load_rule_file(path: str | Path) -> RuleFile:
    """Read a v1 rule file. Rules may reference earlier rules by name."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return parse_rule_document(doc)


def parse_rule_document(doc: dict) -> RuleFile:
    if doc.get("version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported rule file version {doc.get('version')!r}")
    rules: dict[str, Constraint] = {}
    for name, body in doc.get("rules", {}).items():
        rules[name] = constraint_from_json(body, rules)
    top = doc.get("constraint")
    constraint = constraint_from_json(top, rules) if top is not None else Or(tuple(rules.values()))
    return RuleFile(rules, constraint, list(doc.get("report", [])))


# ---------------------------------------------------------------------------
# presets

W, N = Seat.WEST, Seat.NORTH
_AKQJ = frozenset({14, 13, 12, 11})

C0_default = SuitLen(W, Suit.SPADE, ">=", 7) & HcpCmp(W, "<=", 10)
V2 = VulnIs(Vulnerability.NS)
C2 = And((SuitLen(W, Suit.HEART, "=", 1), HonorCount(W, Suit.SPADE, _AKQJ, "=", 2), DistEquals(W, (7, 3, 2, 1))))
R2 = And((C0_default, V2, C2))
V5 = VulnIs(Vulnerability.NS)
C5 = And(
    (
        SuitLen(W, Suit.CLUB, ">=", 4) | SuitLen(W, Suit.DIAMOND, ">=", 4),
        HonorCount(W, Suit.SPADE, _AKQJ, "=", 2),
        DistTemplate(W, ((0, "=", 7), (1, ">=", 4))),
    )
)
R5 = And((C0_default, V5, C5))

_side = (Suit.HEART, Suit.DIAMOND, Suit.CLUB)
Cp0 = And(
    tuple(SuitLen(N, s, "<=", 5) for s in _side)
    + tuple(
        Not(SuitLen(N, a, "=", 5) & SuitLen(N, b, "=", 5))
        for i, a in enumerate(_side)
        for b in _side[i + 1:]
    )
)
Cp1 = HcpCmp(N, ">=", 13) & SuitLen(N, Suit.SPADE, "<=", 1)
Cp2 = And(
    (
        HcpCmp(N, ">=", 16),
        SuitLen(N, Suit.SPADE, "=", 2),
        SuitLen(N, Suit.HEART, ">=", 3),
        SuitLen(N, Suit.DIAMOND, ">=", 3),
        SuitLen(N, Suit.CLUB, ">=", 3),
    )
)
Cp3 = HcpCmp(N, ">=", 20)

FOUR_SPADES = Or((R2, R5))
DOUBLE = And((Cp0, Or((Cp1, Cp2, Cp3))))
CONTEXT = And((FOUR_SPADES, DOUBLE))

PRESETS: dict[str, Constraint] = {
    "C0_default": C0_default,
    "C2": C2,
    "C5": C5,
    "R2": R2,
    "R5": R5,
    "Cp0": Cp0,
    "Cp1": Cp1,
    "Cp2": Cp2,
    "Cp3": Cp3,
    "four_spades": FOUR_SPADES,
    "double": DOUBLE,
    "context": CONTEXT,
}


def preset_rule_file() -> RuleFile:
    """The shipped presets as a rule file (the generation target is ``context``)."""
    rules = {k: PRESETS[k] for k in ("R2", "R5", "Cp1", "Cp2", "Cp3")}
    return RuleFile(rules, CONTEXT, list(rules))


# ---------------------------------------------------------------------------
# generation

BATCH_SIZE = 4096
DEFAULT_FLOOR = 1e-7
_TEMPLATE52 = np.repeat(np.arange(4, dtype=np.int8), 13)
_TEMPLATE39 = np.repeat(np.array([0, 1, 3], dtype=np.int8), 13)
_STREAM_FREE, _STREAM_FIXED_SOUTH = 0, 1


@dataclass
class GenerationResult:
    deals: list[Deal]
    attempts: int

    def __len__(self):
        return len(self.deals)

    def __iter__(self):
        return iter(self.deals)

    def __getitem__(self, i):
        return self.deals[i]


def _draw_batch(seed: int, stream: int, index: int, size: int,
                south: Hand | None, vul: Vulnerability | None) -> Batch:
    rng = np.random.default_rng([seed, stream, index])
    if south is None:
        owners = rng.permuted(np.tile(_TEMPLATE52, (size, 1)), axis=1)
    else:
        free = np.array([i for i in range(52) if not south.mask >> i & 1])
        owners = np.full((size, 52), Seat.SOUTH, dtype=np.int8)
        owners[:, free] = rng.permuted(np.tile(_TEMPLATE39, (size, 1)), axis=1)
    if vul is None:
        vuls = rng.integers(0, 4, size=size, dtype=np.int8)
    else:
        vuls = np.full(size, _VUL_INDEX[vul], dtype=np.int8)
    return Batch(owners, vuls)


def _accepted_in_batch(args) -> list[tuple[list[int], int]]:
    constraint, seed, stream, index, size, south, vul = args
    b = _draw_batch(seed, stream, index, size, south, vul)
    rows = np.flatnonzero(constraint.batch(b))
    weights = [1 << i for i in range(52)]
    out = []
    for r in rows:
        owner = b.owners[r]
        masks = [sum(w for w, o in zip(weights, owner) if o == seat) for seat in range(4)]
        out.append((masks, int(b.vul[r])))
    return out


def _run(constraint: Constraint, count: int, seed: int, stream: int, *,
         south: Hand | None, vul: Vulnerability | None, workers: int,
         floor: float, batch_size: int, max_attempts: int | None) -> GenerationResult:
    if count < 0:
        raise ValueError("count must be >= 0")
    bound = constraint.upper_bound(BoundContext(south, vul))
    if floor > 0 and bound < floor:
        raise AcceptanceRateTooLow(
            f"acceptance probability is at most {bound:.3g}, below the floor {floor:g}"
        )
    deals: list[Deal] = []
    tried = 0
    index = 0
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while len(deals) < count:
            window = range(index, index + max(1, workers))
            jobs = [(constraint, seed, stream, i, batch_size, south, vul) for i in window]
            results = pool.map(_accepted_in_batch, jobs) if pool else map(_accepted_in_batch, jobs)
            for accepted in results:
                tried += batch_size
                for masks, v in accepted:
                    if len(deals) < count:
                        deals.append(deal_from_masks(masks, VUL_ORDER[v]))
                if len(deals) >= count:
                    break
            index += len(window)
            if len(deals) >= count:
                break
            if floor > 0 and (len(deals) + 1) / (tried + 1) < floor:
                raise AcceptanceRateTooLow(
                    f"{len(deals)} accepted in {tried} candidates (floor {floor:g})"
                )
            if max_attempts is not None and tried >= max_attempts:
                raise AcceptanceRateTooLow(f"gave up after {tried} candidates")
    finally:
        if pool:
            pool.shutdown()
    log.debug("accepted %d of %d candidates", len(deals), tried)
    return GenerationResult(deals, tried)


def generate_deals(constraint: Constraint, vul_policy: Vulnerability | str = "uniform",
                   count: int = 1, seed: int = 0, *, workers: int = 1,
                   floor: float = DEFAULT_FLOOR, batch_size: int = BATCH_SIZE,
                   max_attempts: int | None = None) -> GenerationResult:
    """Draw uniformly random deals until ``count`` satisfy ``constraint``.

    ``vul_policy`` is ``"uniform"`` (each candidate draws one of the four
    vulnerability settings) or a fixed :class:`Vulnerability`.
    """
    vul = None if vul_policy == "uniform" else Vulnerability.from_text(vul_policy) \
        if isinstance(vul_policy, str) else vul_policy
    return _run(constraint, count, seed, _STREAM_FREE, south=None, vul=vul, workers=workers,
                floor=floor, batch_size=batch_size, max_attempts=max_attempts)


@dataclass(frozen=True)
class SampleFile:
    south: Hand
    boards: tuple[Deal, ...]
    vulnerability: Vulnerability
    name: str = ""

    def __post_init__(self):
        for d in self.boards:
            if d.south != self.south or d.vulnerability is not self.vulnerability:
                raise ValueError("every board must share the file's South hand and vulnerability")


def resample_fixed_south(template: Deal, constraint: Constraint, count: int, seed: int, *,
                         workers: int = 1, floor: float = DEFAULT_FLOOR,
                         batch_size: int = BATCH_SIZE, name: str = "") -> SampleFile:
    """Keep South's hand and the vulnerability, redeal the other 39 cards.

    The template is board 0; ``count - 1`` further boards are drawn.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if not constraint.evaluate(template):
        raise ValueError("template deal does not satisfy the constraint")
    res = _run(constraint, count - 1, seed, _STREAM_FIXED_SOUTH, south=template.south,
               vul=template.vulnerability, workers=workers, floor=floor,
               batch_size=batch_size, max_attempts=None)
    return SampleFile(template.south, (template, *res.deals), template.vulnerability, name)


def build_sample_files(constraint: Constraint, n_files: int, boards: int, seed: int, *,
                       workers: int = 1, floor: float = DEFAULT_FLOOR) -> list[SampleFile]:
    """Generate ``n_files`` template deals, then resample each around its South hand."""
    templates = generate_deals(constraint, "uniform", n_files, seed, workers=workers, floor=floor)
    ss = np.random.SeedSequence(seed).spawn(n_files)
    return [
        resample_fixed_south(t, constraint, boards, int(s.generate_state(1)[0]),
                             workers=workers, floor=floor, name=f"south_{i}")
        for i, (t, s) in enumerate(zip(templates, ss))
    ]


def write_sample_files(directory: str | Path, files: Iterable[SampleFile]) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for i, f in enumerate(files):
        path = directory / f"{f.name or f'south_{i}'}.deals"
        write_deals(path, f.boards, [f"south {f.south.to_text()}", f"vulnerability {f.vulnerability.code}"])
        paths.append(path)
    return paths


def read_sample_file(path: str | Path) -> SampleFile:
    boards = read_deals(path)
    if not boards:
        raise ValueError(f"empty sample file {path}")
    return SampleFile(boards[0].south, tuple(boards), boards[0].vulnerability, Path(path).stem)


def read_sample_dir(directory: str | Path) -> list[SampleFile]:
    paths = sorted(Path(directory).glob("south_*.deals"), key=lambda p: int(p.stem.split("_")[1]))
    return [read_sample_file(p) for p in paths]


@dataclass(frozen=True)
class RuleStat:
    name: str
    count: int
    percent: float


def rule_satisfaction_report(constraints: Mapping[str, Constraint], deals: Sequence[Deal]) -> list[RuleStat]:
    """Per-rule counts, as percentages of the deals satisfying at least one rule.
    Overlapping rules can push the total above 100."""
    hits = {name: [c.evaluate(d) for d in deals] for name, c in constraints.items()}
    any_hit = sum(any(col) for col in zip(*hits.values())) if hits else 0
    return [
        RuleStat(name, sum(col), 100.0 * sum(col) / any_hit if any_hit else 0.0)
        for name, col in hits.items()
    ]
