"""Double-dummy trick counting and contract scoring."""

from .scoring import contract_points, score_contract
from .solver import MalformedPosition, dd_table, solve, solve_position
from .table import (
    CONTRACT_SET_PRESETS,
    ContractSet,
    Entry,
    ScoreTable,
    build_table,
    contract_set_preset,
    read_score_tables,
    resolve_backend,
    score_table,
    score_tables,
    trick_tables,
    write_score_tables,
)

__all__ = [
    "CONTRACT_SET_PRESETS", "ContractSet", "Entry", "MalformedPosition", "ScoreTable", "build_table",
    "contract_set_preset",     "contract_points", "dd_table", "read_score_tables", "resolve_backend",
    "score_contract", "score_table", "score_tables", "solve", "solve_position",
    "trick_tables", "write_score_tables",
]
