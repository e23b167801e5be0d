"""
Judging outcomes: feasibility, blocking and weak blocking
==========================================================

A pair is rigid as soon as one of its agents is rigid. Rigid pairs split
their productivity in a fixed way; flexible pairs may split it however they
like.
"""

from rifle import catalog
from rifle.core import Outcome, PairClass, pair_class
from rifle.verify import stability_report

# p2 and q2 are rigid here, so (p1, q1) is the only flexible pair
market = catalog.blocking_pair_market()
for i in range(2):
    print([pair_class(market, i, j).name for j in range(2)])

# splitting the flexible pair 2/4 leaves p1 wanting q2, who would also gain
rep = stability_report(market, Outcome((0, 1), (2, 10), (4, 5)))
print("verdict:", rep.verdict.name, " blocking:", rep.blocking_pairs)

# with 6/0 instead, nobody can do better
rep = stability_report(market, Outcome((0, 1), (6, 10), (0, 5)))
print("verdict:", rep.verdict.name)

# stable, yet q2 could switch to p1 for the same share while p1 gains
weak = catalog.weak_blocking_market()
rep = stability_report(weak, catalog.weak_blocking_outcome())
print("verdict:", rep.verdict.name, " weak blocking:", rep.weak_blocking_pairs)

# a flexible agent cannot give up part of a rigid partner's share
rep = stability_report(catalog.side_payment_market(), catalog.side_payment_outcome())
print("verdict:", rep.verdict.name, " rigidity violations:", rep.feasibility.rigidity_violations)
