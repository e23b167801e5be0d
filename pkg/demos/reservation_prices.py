"""
Staying single: reservation prices
==================================

An agent may prefer to stay unmatched at a reservation price. Each agent gets
a rigid dummy partner paying exactly that price, which keeps every matching
perfect. In non-degenerate markets the set of agents left single is the same
in every stable outcome.
"""

from rifle.analysis import is_non_degenerate
from rifle.core import add_reservation_prices, from_table
from rifle.oracle import stable_outcomes
from rifle.solver import solve

base = from_table([[5, (2, 2)], [6, (1, 4)]], rigid_p=[0, 0], rigid_q=[0, 1])
padded = add_reservation_prices(base, u_r=[1, 4], v_r=[1, 3])
print("non-degenerate:", bool(is_non_degenerate(padded)))

k = padded.n_real
single = set()
for o in stable_outcomes(padded):
    inv = {j: i for i, j in enumerate(o.matching)}
    alone = (tuple(f"p{i + 1}" for i in range(k) if o.matching[i] >= k)
             + tuple(f"q{j + 1}" for j in range(k) if inv[j] >= k))
    single.add(alone)
print("single agents across all stable outcomes:", single)

o = solve(padded)
print("solver: u =", list(o.u[:k]), " v =", list(o.v[:k]))
