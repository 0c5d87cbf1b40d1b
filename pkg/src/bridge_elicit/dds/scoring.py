"""Duplicate bridge scoring."""

from __future__ import annotations

from ..cards import Contract, Doubling, Strain, Vulnerability

_UNDERTRICKS_DOUBLED = {
    # (vulnerable) -> penalty for the 1st, 2nd and 3rd, and each later undertrick
    False: (100, 200, 200, 300),
    True: (200, 300, 300, 300),
}


def _trick_value(strain: Strain) -> tuple[int, int]:
    """(first trick, each further trick) for contracted tricks."""
    if strain.is_minor:
        return 20, 20
    if strain is Strain.NOTRUMP:
        return 40, 30
    return 30, 30


def contract_points(contract: Contract) -> int:
    """Trick score below the line, doubling included."""
    first, rest = _trick_value(contract.strain)
    return (first + rest * (contract.level - 1)) * (1 << contract.doubling)


def score_contract(contract: Contract, vul: Vulnerability | bool, tricks: int) -> int:
    """Points for the declaring side. ``vul`` is either the deal's
    vulnerability (read for the declarer's side) or a plain flag."""
    if not 0 <= tricks <= 13:
        raise ValueError(f"tricks out of range: {tricks}")
    vulnerable = vul if isinstance(vul, bool) else vul.side_vulnerable(contract.declarer)
    doubling = contract.doubling
    need = contract.tricks_required

    if tricks < need:
        down = need - tricks
        if doubling is Doubling.UNDOUBLED:
            return -down * (100 if vulnerable else 50)
        sched = _UNDERTRICKS_DOUBLED[vulnerable]
        penalty = sum(sched[min(i, 3)] for i in range(down))
        return -penalty * (2 if doubling is Doubling.REDOUBLED else 1)

    below = contract_points(contract)
    score = below
    if below >= 100:
        score += 500 if vulnerable else 300
    else:
        score += 50
    if contract.level == 6:
        score += 750 if vulnerable else 500
    elif contract.level == 7:
        score += 1500 if vulnerable else 1000
    score += 50 * doubling  # the insult
    over = tricks - need
    if doubling is Doubling.UNDOUBLED:
        score += over * _trick_value(contract.strain)[1]
    else:
        score += over * (200 if vulnerable else 100) * doubling
    return score
