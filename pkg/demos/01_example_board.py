"""Walk one board from text to a bid/pass label.

Run: python3 demos/01_example_board.py   (needs endplay for the full table)
"""

from bridge_elicit.cards import Seat, parse_deal
from bridge_elicit.dds import contract_set_preset, score_table
from bridge_elicit.dealgen import PRESETS, eval_constraint
from bridge_elicit.labeler import label_tables
from bridge_elicit.predicates import hand_facts_text, hcp, nbs

deal = parse_deal("n N:6.AQ93.KQT42.A94 E:T3.J84.A7.QJ8762 S:Q94.KT652.95.KT3 W:AKJ8752.7.J863.5")
south = deal[Seat.SOUTH]
print("South:", south, "| HCP", hcp(south), "| spades", nbs(south))
print("South as background facts:")
for line in hand_facts_text(south)[:6]:
    print("  ", line)

for name in ("R2", "R5", "Cp1", "context"):
    print(f"rule {name:8s} holds: {eval_constraint(PRESETS[name], deal)}")

for preset in ("all", "outbid"):
    table = score_table(deal, contract_set_preset(preset))
    d = table.defended
    print(f"\n[{preset}] {len(table)} entries; 4SX by West takes {d.tricks} tricks, NS score {d.ns_score:+d}")
    best = max(table.ns_entries, key=lambda e: e.ns_score)
    print(f"[{preset}] best NS contract {best.contract} scores {best.ns_score:+d}")
    decision = label_tables([table])
    print(f"[{preset}] one-board label: {decision.label.value} "
          f"(defend {decision.s_def:+.0f}, best fixed contract {decision.best_contract} {decision.best_mean:+.0f})")
