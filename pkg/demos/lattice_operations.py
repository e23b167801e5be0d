"""
Join and meet of stable outcomes
================================

In a non-degenerate market the stable outcomes form a lattice: giving every
P-agent the better of two payoffs and every Q-agent the worse one is again a
stable outcome. Degenerate markets can break this.
"""

import itertools

from rifle import catalog
from rifle.analysis import NoCompatibleMatching, comparison_digraph, is_non_degenerate, join, meet
from rifle.oracle import stable_outcomes

market = catalog.blocking_pair_market()
print("non-degenerate:", bool(is_non_degenerate(market)))
ss = list(stable_outcomes(market))
a, b = ss[0], ss[-1]
g = comparison_digraph(market, a, b)
print("components:", [(c.p, c.q, c.orientation) for c in g.components])
print("join:", join(market, a, b))
print("meet:", meet(market, a, b))
closed = all(join(market, x, y) in ss and meet(market, x, y) in ss
             for x, y in itertools.combinations(ss, 2))
print("closed under join and meet:", closed)

# two matchings force the same total on {p2, q1}: the market is degenerate
deg = catalog.degenerate_market()
res = is_non_degenerate(deg)
w = res.witness
print("non-degenerate:", res.ok, " coalition:", sorted(w.coalition.p), sorted(w.coalition.q), " value:", w.value)
o1, o2 = catalog.degenerate_outcomes()
try:
    join(deg, o1, o2)
except NoCompatibleMatching as err:
    print("join fails:", err)
