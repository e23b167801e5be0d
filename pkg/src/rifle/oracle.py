"""Brute-force enumeration of integer stable outcomes on small markets.

Independent of the solver: every matching is tried, rigid matched pairs get
their prescribed split and flexible matched pairs range over all integer
splits of their productivity (stable outcomes carry no side payments).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

import numpy as np

from .core import Instance, Matching, Outcome

MAX_MATCHING_N = 8
MAX_ORACLE_N = 6


class SizeGuardError(ValueError):
    pass


class NotUnique(ValueError):
    """No single outcome dominates the whole set under the P-order."""


class Order(Enum):
    GREATER = "greater"
    LESS = "less"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class StableSet:
    instance: Instance
    outcomes: tuple[Outcome, ...]

    def __len__(self):
        return len(self.outcomes)

    def __iter__(self):
        return iter(self.outcomes)

    def __contains__(self, o):
        return o in self._lookup

    @property
    def _lookup(self) -> frozenset:
        cached = self.__dict__.get("_lookup_cache")
        if cached is None:
            cached = frozenset(self.outcomes)
            object.__setattr__(self, "_lookup_cache", cached)
        return cached


def enumerate_matchings(n: int) -> Iterator[Matching]:
    """All ``n!`` perfect matchings in lexicographic order."""
    if n > MAX_MATCHING_N:
        raise SizeGuardError(f"n={n} exceeds the matching enumeration guard {MAX_MATCHING_N}")
    return itertools.permutations(range(n))


def _canonical_key(o: Outcome):
    return (o.matching, o.u, o.v)


def stable_outcomes_for_matching(inst: Instance, m: Sequence[int]) -> list[Outcome]:
    """All integer stable outcomes whose matching is ``m``."""
    n = inst.n
    beta, gamma, alpha, rigid = inst.beta, inst.gamma, inst.alpha, inst.rigid_pairs
    m = list(m)
    inv = [0] * n
    for i, j in enumerate(m):
        inv[j] = i
    fixed_u = {}
    flex = []
    for i, j in enumerate(m):
        if rigid[i, j]:
            fixed_u[i] = int(beta[i, j])
        else:
            flex.append(i)

    # columns of ``grid`` hold u_i for the P-agents decided so far
    grid = np.array([[fixed_u[i] for i in fixed_u]], dtype=np.int64).reshape(1, len(fixed_u))
    decided: list[int] = list(fixed_u)

    def u_col(i):
        return grid[:, decided.index(i)]

    def v_col(j):
        i = inv[j]
        return alpha[i, j] - u_col(i)

    def prune():
        nonlocal grid
        if grid.shape[0] == 0:
            return
        keep = np.ones(grid.shape[0], dtype=bool)
        dset = set(decided)
        for i in decided:
            ui = u_col(i)
            for j in range(n):
                if inv[j] not in dset:
                    continue
                vj = v_col(j)
                if rigid[i, j]:
                    keep &= (ui >= beta[i, j]) | (vj >= gamma[i, j])
                else:
                    keep &= ui + vj >= alpha[i, j]
        grid = grid[keep]

    prune()
    for i in flex:
        a = int(alpha[i, m[i]])
        splits = np.arange(a + 1, dtype=np.int64)
        grid = np.concatenate(
            [np.repeat(grid, a + 1, axis=0), np.tile(splits, grid.shape[0])[:, None]], axis=1)
        decided.append(i)
        prune()

    out = []
    pos = {i: k for k, i in enumerate(decided)}
    for row in grid:
        u = [int(row[pos[i]]) for i in range(n)]
        v = [int(alpha[inv[j], j]) - u[inv[j]] for j in range(n)]
        out.append(Outcome(tuple(m), u, v))
    return out


def stable_outcomes(inst: Instance) -> StableSet:
    """Every integer stable outcome of ``inst``, in canonical order."""
    if inst.n > MAX_ORACLE_N:
        raise SizeGuardError(f"n={inst.n} exceeds the oracle guard {MAX_ORACLE_N}")
    found = []
    for m in enumerate_matchings(inst.n):
        found.extend(stable_outcomes_for_matching(inst, m))
    found = sorted(set(found), key=_canonical_key)
    return StableSet(inst, tuple(found))


def compare_p(o1: Outcome, o2: Outcome) -> Order:
    """Compare under the P-order: higher P payoffs and lower Q payoffs are better."""
    if o1.n != o2.n:
        raise ValueError("outcomes of different sizes")
    ge = all(a >= b for a, b in zip(o1.u, o2.u)) and all(a <= b for a, b in zip(o1.v, o2.v))
    le = all(a <= b for a, b in zip(o1.u, o2.u)) and all(a >= b for a, b in zip(o1.v, o2.v))
    if ge and le:
        return Order.EQUAL
    if ge:
        return Order.GREATER
    if le:
        return Order.LESS
    return Order.INCOMPARABLE


def p_optimal(outcomes) -> Outcome:
    """The outcome weakly P-preferred to every other one.

    Such an outcome must pay every P-agent its best payoff and every Q-agent its
    worst one over the set. Raises :class:`NotUnique` when no outcome does so,
    or when several matchings carry that payoff.
    """
    outs = list(outcomes)
    if not outs:
        raise ValueError("empty set of outcomes")
    n = outs[0].n
    u = tuple(max(o.u[i] for o in outs) for i in range(n))
    v = tuple(min(o.v[j] for o in outs) for j in range(n))
    best = sorted({o for o in outs if o.u == u and o.v == v}, key=_canonical_key)
    if not best:
        raise NotUnique(f"no outcome attains u={list(u)}, v={list(v)}")
    if len(best) > 1:
        raise NotUnique(f"{len(best)} matchings carry the optimal payoff")
    return best[0]


def max_total_productivity(inst: Instance) -> int:
    """Best total productivity over all matchings, by enumeration."""
    return max(int(sum(inst.alpha[i, j] for i, j in enumerate(m)))
               for m in enumerate_matchings(inst.n))

