"""
Watching the ascending auction
===============================

Q-agents hold prices that only go up. Each P-agent points at a Q-agent of
maximal value; rigid proposals fix prices, augmenting paths reshuffle ties,
and over-demanded groups get more expensive until the proposals form a
matching.
"""

from rifle import catalog
from rifle.cli import value_table
from rifle.solver import run
from rifle.verify import classify

market = catalog.auction_market()
res = run(market, trace=True)

# one value table per transition; demanded entries are bracketed
for rec in res.trace:
    print(f"{rec.tag:8} prices={list(rec.prices)} proposals={[j + 1 for j in rec.proposal]}")
    print("\n".join(value_table(market, rec)))
    print()

o = res.outcome
print("matching:", [f"q{j + 1}" for j in o.matching])
print("u =", list(o.u), " v =", list(o.v))
print("verdict:", classify(market, o).name)
