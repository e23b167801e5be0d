"""
Marriage markets and assignment games
======================================

With every agent rigid the model is a marriage market: the auction then
behaves like men-proposing deferred acceptance. With every agent flexible it
is an assignment game: the auction picks a matching of maximal total value.
"""

import numpy as np

from rifle.core import from_assignment, from_marriage, total_productivity
from rifle.oracle import max_total_productivity
from rifle.solver import solve

# preference lists, most preferred first
men = [[0, 1, 2], [1, 0, 2], [0, 2, 1]]
women = [[1, 0, 2], [0, 1, 2], [2, 1, 0]]
marriage = from_marriage(men, women)
print("marriage matching:", [f"q{j + 1}" for j in solve(marriage).matching])

rng = np.random.default_rng(3)
a = rng.integers(0, 10, size=(4, 4))
game = from_assignment(a)
o = solve(game)
print(a)
print("assignment matching:", [f"q{j + 1}" for j in o.matching])
print("total value:", total_productivity(game, o.matching), "best possible:", max_total_productivity(game))
print("prices:", list(o.v))
