"""Per-deal score tables: the defended 4SX plus every allowed NS contract.

Trick counts come from a backend. ``native`` is the pure Python solver in
this package; ``endplay`` wraps the DDS C library and is orders of
magnitude faster on full 13-card deals. ``auto`` picks endplay when it is
importable.
"""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from ..cards import Contract, Deal, Doubling, Seat, Strain
from .scoring import score_contract
from .solver import solve

DEFENDED = Contract(4, Strain.SPADE, Doubling.DOUBLED, Seat.WEST)
DEFAULT_EXCLUDED = frozenset({"4N", "5N", "5S", "6S", "7S"})


@dataclass(frozen=True)
class ContractSet:
    """Which contracts a score table holds."""

    defended: Contract = DEFENDED
    excluded: frozenset[str] = DEFAULT_EXCLUDED
    declarers: tuple[Seat, ...] = (Seat.NORTH, Seat.SOUTH)
    outbid_only: bool = False  # keep only NS contracts ranking above the defended one

    def ns_contracts(self) -> list[tuple[int, Strain]]:
        return [
            (level, strain)
            for level in range(1, 8)
            for strain in Strain
            if f"{level}{strain.letter}" not in self.excluded
            and (not self.outbid_only or (level, strain) > (self.defended.level, self.defended.strain))
        ]

    def needed(self) -> list[tuple[Strain, Seat]]:
        """(strain, declarer) pairs the solver must answer."""
        pairs = [(self.defended.strain, self.defended.declarer)]
        strains = sorted({s for _, s in self.ns_contracts()})
        pairs += [(s, d) for s in strains for d in self.declarers]
        return pairs

    @classmethod
    def from_json(cls, obj: Mapping | None) -> "ContractSet":
        if not obj:
            return cls()
        if isinstance(obj, str):
            return contract_set_preset(obj)
        defended = Contract.parse(obj.get("defended", str(DEFENDED)))
        excluded = frozenset(str(x).upper().replace("NT", "N") for x in obj.get("excluded", DEFAULT_EXCLUDED))
        declarers = tuple(Seat.from_text(s) for s in obj.get("declarers", ["N", "S"]))
        return cls(defended, excluded, declarers, bool(obj.get("outbid_only", False)))

    def to_json(self) -> dict:
        return {
            "defended": str(self.defended),
            "excluded": sorted(self.excluded),
            "declarers": [s.letter for s in self.declarers],
            "outbid_only": self.outbid_only,
        }


CONTRACT_SET_PRESETS = {
    # every NS contract from 1C to 7N except the excluded five (31 table entries)
    "all": ContractSet(),
    # only the bids South can still make after 4SX: 5C..7N minus the excluded five
    "outbid": ContractSet(outbid_only=True),
}


def contract_set_preset(name: str) -> ContractSet:
    try:
        return CONTRACT_SET_PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown contract set {name!r}; choose from {sorted(CONTRACT_SET_PRESETS)}") from None


@dataclass(frozen=True)
class Entry:
    contract: Contract
    tricks: int  # for the declaring side
    ns_score: int


@dataclass
class ScoreTable:
    deal: Deal
    entries: dict[Contract, Entry] = field(default_factory=dict)

    @property
    def defended(self) -> Entry:
        return next(e for e in self.entries.values() if not e.contract.declarer.is_ns)

    @property
    def ns_entries(self) -> list[Entry]:
        return [e for e in self.entries.values() if e.contract.declarer.is_ns]

    def ns_score(self, level: int, strain: Strain) -> int:
        for e in self.ns_entries:
            if e.contract.level == level and e.contract.strain is strain:
                return e.ns_score
        raise KeyError(f"{level}{strain.letter}")

    @property
    def best_ns(self) -> int:
        return max(e.ns_score for e in self.ns_entries)

    def __len__(self) -> int:
        return len(self.entries)


def build_table(deal: Deal, tricks: Mapping[tuple[Strain, Seat], int],
                contracts: ContractSet = ContractSet()) -> ScoreTable:
    """Assemble a table from known trick counts (declaring side's tricks)."""
    table = ScoreTable(deal)
    d = contracts.defended
    t = tricks[(d.strain, d.declarer)]
    sign = 1 if d.declarer.is_ns else -1
    table.entries[d] = Entry(d, t, sign * score_contract(d, deal.vulnerability, t))
    for level, strain in contracts.ns_contracts():
        best = None
        for seat in contracts.declarers:
            c = Contract(level, strain, Doubling.UNDOUBLED, seat)
            tk = tricks[(strain, seat)]
            if best is None or tk > best[1]:
                best = (c, tk)
        c, tk = best
        table.entries[c] = Entry(c, tk, score_contract(c, deal.vulnerability, tk))
    return table


# -- backends --------------------------------------------------------------

def endplay_available() -> bool:
    try:
        import endplay.dds  # noqa: F401
    except ImportError:
        return False
    return True


def resolve_backend(backend: str) -> str:
    if backend == "auto":
        return "endplay" if endplay_available() else "native"
    if backend not in ("native", "endplay"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "endplay" and not endplay_available():
        raise RuntimeError("the endplay backend was requested but endplay is not installed")
    return backend


def _native_tricks(deal: Deal, pairs: Sequence[tuple[Strain, Seat]]) -> dict:
    return {(s, d): solve(deal, s, d) for s, d in pairs}


_EP_DENOM = {Strain.SPADE: 0, Strain.HEART: 1, Strain.DIAMOND: 2, Strain.CLUB: 3, Strain.NOTRUMP: 4}


def _endplay_deal(deal: Deal):
    from endplay.types import Deal as EPDeal

    return EPDeal("N:" + " ".join(h.to_text() for h in deal.hands))


def _endplay_tricks(deals: Sequence[Deal]) -> list[dict]:
    from endplay.dds import calc_all_tables

    out = []
    for i in range(0, len(deals), 32):
        chunk = deals[i:i + 32]
        for table in calc_all_tables([_endplay_deal(d) for d in chunk]):
            rows = table.to_list()  # [denom][player], denoms S H D C N, players N E S W
            out.append({(s, seat): rows[_EP_DENOM[s]][seat] for s in Strain for seat in Seat})
    return out


def trick_tables(deals: Sequence[Deal], contracts: ContractSet = ContractSet(), *,
                 backend: str = "auto", workers: int = 1) -> list[dict]:
    backend = resolve_backend(backend)
    if backend == "endplay":
        return _endplay_tricks(list(deals))
    pairs = contracts.needed()
    if workers <= 1:
        return [_native_tricks(d, pairs) for d in deals]
    with ThreadPoolExecutor(workers) as pool:
        return list(pool.map(lambda d: _native_tricks(d, pairs), deals))


def score_table(deal: Deal, contracts: ContractSet = ContractSet(), *, backend: str = "auto") -> ScoreTable:
    return build_table(deal, trick_tables([deal], contracts, backend=backend)[0], contracts)


def score_tables(deals: Sequence[Deal], contracts: ContractSet = ContractSet(), *,
                 backend: str = "auto", workers: int = 1) -> list[ScoreTable]:
    tricks = trick_tables(deals, contracts, backend=backend, workers=workers)
    return [build_table(d, t, contracts) for d, t in zip(deals, tricks)]


# -- CSV -------------------------------------------------------------------

TABLE_COLUMNS = ("deal", "contract", "tricks", "ns_score")


def write_score_tables(path: str | Path, tables: Iterable[ScoreTable]) -> None:
    with open(path, "w", newline="", encoding="ascii") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TABLE_COLUMNS)
        for i, table in enumerate(tables):
            for e in table.entries.values():
                w.writerow([i, str(e.contract), e.tricks, e.ns_score])


def read_score_tables(path: str | Path, deals: Sequence[Deal]) -> list[ScoreTable]:
    tables = [ScoreTable(d) for d in deals]
    with open(path, newline="", encoding="ascii") as fh:
        for row in csv.DictReader(fh):
            c = Contract.parse(row["contract"])
            tables[int(row["deal"])].entries[c] = Entry(c, int(row["tricks"]), int(row["ns_score"]))
    return tables
