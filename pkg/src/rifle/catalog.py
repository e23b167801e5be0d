"""Small hand-made markets with known behaviour, used by the tests and demos.

Cells are ``(beta, gamma)`` for rigid pairs; a bare number is the
productivity of a flexible pair.
"""
from __future__ import annotations

from .core import Instance, Outcome, from_table


def blocking_pair_market() -> Instance:
    """p2 and q2 rigid; splitting (p1, q1) as 2/4 lets (p1, q2) block."""
    return from_table([[(3, 3), (3, 6)],
                       [(2, 5), (10, 5)]], rigid_p=[0, 1], rigid_q=[0, 1])


def side_payment_market() -> Instance:
    """Both Q-agents rigid. A side payment from p2 to p1 would only be stable
    if flexible agents could accept less than their share in a rigid pair."""
    return from_table([[(3, 3), (4, 6)],
                       [(1, 1), (10, 5)]], rigid_p=[0, 0], rigid_q=[1, 1])


def side_payment_outcome() -> Outcome:
    return Outcome((0, 1), (5, 8), (3, 5))


def weak_blocking_market() -> Instance:
    """Only q2 rigid; non-degenerate, with a stable outcome that is not strongly stable."""
    return from_table([[18, (10, 7)],
                       [21, (14, 5)]], rigid_p=[0, 0], rigid_q=[0, 1])


def weak_blocking_outcome() -> Outcome:
    return Outcome((0, 1), (10, 14), (8, 5))


def auction_market() -> Instance:
    """Five-by-five market with p1, p2 and q1 rigid; the auction trace is known step by step."""
    return from_table([[(7, 6), (9, 9), (4, 9), (6, 5), (6, 4)],
                       [(8, 5), (9, 9), (3, 5), (7, 7), (2, 5)],
                       [(5, 8), 17, 13, 13, 8],
                       [(1, 5), 8, 10, 9, 6],
                       [(1, 6), 12, 8, 9, 7]],
                      rigid_p=[1, 1, 0, 0, 0], rigid_q=[1, 0, 0, 0, 0])


def auction_outcome() -> Outcome:
    return Outcome((1, 0, 3, 2, 4), (9, 8, 11, 8, 7), (5, 9, 2, 2, 0))


def degenerate_market() -> Instance:
    """p1 and q2 rigid. Two stable outcomes whose componentwise join fits no matching."""
    return from_table([[(4, 5), (2, 3)],
                       [11, (6, 7)]], rigid_p=[1, 0], rigid_q=[0, 1])


def degenerate_outcomes() -> tuple[Outcome, Outcome]:
    return Outcome((0, 1), (4, 6), (5, 7)), Outcome((1, 0), (2, 6), (5, 3))
