"""The hand-picked L2 rule model M (15 clauses), kept verbatim."""

from __future__ import annotations

from .logic import RuleSet, parse_rules

MODEL_M_TEXT = """\
decision(A,4,B,C,bid) :-
   nbs(A,0).
decision(A,4,B,C,bid) :-
   hcp(A,D), gteq(D,5), nb(A,E,F), gteq(F,6), nbs(A,1).
decision(A,4,B,C,bid) :-
   hcp(A,D), gteq(D,9), nbs(A,1).
decision(A,4,B,C,bid) :-
   hcp(A,D), gteq(D,8), nb(A,E,F), gteq(F,5), nbs(A,1).
decision(A,4,B,C,bid) :-
   hcp(A,D), gteq(D,4), distribution(A,[6,4,2,1]).
decision(A,4,B,C,bid) :-
   hcp(A,D), gteq(D,8), nb(A,E,F), gteq(F,6), nbs(A,2).
decision(A,4,B,C,bid) :-
   hcp(A,D), gteq(D,13), nb(A,E,F), gteq(F,5), nbs(A,2).
decision(A,4,B,C,bid) :-
   hcp(A,D), gteq(D,10), nb(A,E,F), gteq(F,6).
decision(A,4,B,C,bid) :-
   nb(A,D,E), gteq(E,7).
decision(A,4,B,C,bid) :-
   hcp(A,D), gteq(D,14), nb(A,E,F), gteq(F,5).
decision(A,4,B,C,bid) :-
   nb(A,D,E), lteq(E,1), nbs(A,2).
decision(A,4,B,C,bid) :-
   hcp(A,D), nb(A,E,D), nb(A,F,G), gteq(G,6).
decision(A,4,B,C,bid) :-
   hcp(A,D), gteq(D,12), nb(A,E,F), lteq(F,1).
decision(A,4,B,C,bid) :-
   hcp(A,D), lteq(D,7), gteq(D,7), nb(A,E,F), gteq(F,6).
decision(A,4,B,C,bid) :-
   hcp(A,D), gteq(D,14), nbs(A,2).
"""


def expert_model_M() -> RuleSet:
    return parse_rules(MODEL_M_TEXT)
