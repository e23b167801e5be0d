"""
Brute-force stable sets
=======================

For small markets every matching and every integer split can be checked.
This gives an independent reference for the auction.
"""

from rifle import catalog
from rifle.oracle import NotUnique, Order, compare_p, p_optimal, stable_outcomes
from rifle.solver import solve

market = catalog.blocking_pair_market()
ss = stable_outcomes(market)
print(len(ss), "stable outcomes")
for o in ss:
    print("  ", [j + 1 for j in o.matching], o.u, o.v)

# the P-optimal outcome pays each P-agent its maximum over the set
best = p_optimal(ss)
print("P-optimal:", best.u, best.v, " solver agrees:", solve(market) == best)

# q2 of the auction market ties between p1 and p2, so two maximal outcomes exist
auction = catalog.auction_market()
ss = stable_outcomes(auction)
try:
    p_optimal(ss)
except NotUnique as err:
    print("auction market:", err)
found = solve(auction)
beaten = [o for o in ss if compare_p(o, found) is Order.GREATER]
print("outcomes strictly better for P than the solver's:", len(beaten))
