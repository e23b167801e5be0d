"""Stable outcomes in two-sided markets where each agent is rigid or flexible.

Rigid agents only accept a prescribed split of a partnership's productivity;
flexible agents negotiate. All-rigid markets are marriage markets, all-flexible
ones are assignment games.
"""
from .core import (Instance, Matching, Outcome, PairClass, add_reservation_prices, alpha,
                   from_assignment, from_marriage, from_table, make_instance, pair_class,
                   total_productivity)
from .verify import (Verdict, blocking_pairs, check_feasibility, classify, is_stable,
                     stability_report, weak_blocking_pairs)
from .solver import BudgetExceeded, solve
from .oracle import NotUnique, Order, StableSet, compare_p, p_optimal, stable_outcomes
from .analysis import (NoCompatibleMatching, comparison_digraph, forced_payoff,
                       is_non_degenerate, join, matching_from_payoff, meet)

__version__ = "0.1.0"
