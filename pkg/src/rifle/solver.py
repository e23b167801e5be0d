"""Ascending-price auction that finds a stable outcome.

Q-agents carry integer prices that only ever rise; every P-agent proposes to
one Q-agent of maximal value at current prices. Three subprocesses drive the
proposal map towards a matching:

A
    Each Q-agent with rigid proposals keeps the rigid proposer with the largest
    Q-share, sets its price to that share and bars its other rigid proposers.
B
    Shift proposals along a path of equally good alternatives that starts at a
    Q-agent with several proposers and ends at a Q-agent with no proposer
    (case 1) or with a rigid proposer, who is then barred (case 2).
C
    Raise by one the prices of the Q-agents reachable from over-proposed agents
    when no such path exists.

All ties are broken towards the lowest index.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from enum import Enum

from .core import Instance, Outcome

UNASSIGNED = -1


class BudgetExceeded(RuntimeError):
    """The run took more steps than the termination bound allows."""


class BCase(Enum):
    CASE1 = "case1"
    CASE2 = "case2"


@dataclass(frozen=True)
class SolverState:
    prices: tuple[int, ...]
    proposal: tuple[int, ...]
    barred: frozenset[tuple[int, int]] = frozenset()
    step: int = 0

    @classmethod
    def initial(cls, n: int) -> "SolverState":
        return cls(prices=(0,) * n, proposal=(UNASSIGNED,) * n)

    def proposers(self, j: int) -> list[int]:
        return [i for i, k in enumerate(self.proposal) if k == j]

    def is_matching(self) -> bool:
        return UNASSIGNED not in self.proposal and len(set(self.proposal)) == len(self.proposal)


@dataclass
class TraceRecord:
    tag: str
    prices: tuple[int, ...]
    proposal: tuple[int, ...]
    barred: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, tag: str, st: SolverState) -> "TraceRecord":
        return cls(tag, st.prices, st.proposal, tuple(sorted(st.barred)))


@dataclass
class SolveResult:
    outcome: Outcome
    state: SolverState
    trace: list[TraceRecord] = field(default_factory=list)


def value(inst: Instance, st: SolverState, i: int, j: int) -> int:
    """What q_j is worth to p_i at q_j's current price.

    A rigid pair is worth the P-share while the price is below the Q-share, and
    at equality only to the P-agent already proposing there. Barred pairs and
    pairs priced above the Q-share are worth 0.
    """
    x = st.prices[j]
    b, g = int(inst.beta[i, j]), int(inst.gamma[i, j])
    if not inst.rigid_pairs[i, j]:
        return b + g - x
    if (i, j) in st.barred or x > g:
        return 0
    if x < g:
        return b
    # at x == g the current holder keeps q_j; a Q-agent nobody proposes to
    # (only possible at price 0 == g) is open to everyone
    if st.proposal[i] == j or j not in st.proposal:
        return b
    return 0


def available(inst: Instance, st: SolverState, i: int, j: int) -> bool:
    """False for rigid pairs that can never be proposed to at the current price.

    These are the barred pairs and the pairs priced above their Q-share. Both
    already satisfy the stability inequality through the price, so leaving
    them out of demand sets is safe; it only matters when a P-agent's best
    value is 0, where a zero-valued barred pair would otherwise tie.
    """
    if not inst.rigid_pairs[i, j]:
        return True
    return (i, j) not in st.barred and st.prices[j] <= inst.gamma[i, j]


def demand_set(inst: Instance, st: SolverState, i: int) -> list[int]:
    """Sorted Q-indices of maximal value to p_i among those it may propose to."""
    vals = {j: value(inst, st, i, j) for j in range(inst.n) if available(inst, st, i, j)}
    if not vals:
        raise RuntimeError(f"p{i} has an empty demand set; state {st}")
    best = max(vals.values())
    return [j for j, x in vals.items() if x == best]


def reassign_proposals(inst: Instance, st: SolverState) -> SolverState:
    """Keep every still-maximal proposal; move the rest to their lowest demanded index."""
    new = list(st.proposal)
    for i in range(inst.n):
        d = demand_set(inst, st, i)
        if new[i] not in d:
            new[i] = d[0]
    return replace(st, proposal=tuple(new))


def _rigid_proposers(inst: Instance, st: SolverState, j: int) -> list[int]:
    return [i for i in st.proposers(j) if inst.rigid_pairs[i, j]]


def subprocess_a_run(inst: Instance, st: SolverState) -> SolverState:
    """One round of rigid-proposal resolution followed by reassignment."""
    prices = list(st.prices)
    barred = set(st.barred)
    for j in range(inst.n):
        rigid = _rigid_proposers(inst, st, j)
        if not rigid:
            continue
        keep = max(rigid, key=lambda i: (inst.gamma[i, j], -i))
        g = int(inst.gamma[keep, j])
        if g < prices[j]:
            raise RuntimeError(f"rigid proposal ({keep}, {j}) below the current price")
        prices[j] = g
        barred.update((i, j) for i in rigid if i != keep)
    st = replace(st, prices=tuple(prices), barred=frozenset(barred))
    return reassign_proposals(inst, st)


def subprocess_a(inst: Instance, st: SolverState, trace: list | None = None,
                 budget: int | None = None) -> SolverState:
    """Run subprocess A rounds until nothing changes."""
    while True:
        nxt = subprocess_a_run(inst, st)
        if (nxt.prices, nxt.proposal, nxt.barred) == (st.prices, st.proposal, st.barred):
            return st
        st = replace(nxt, step=st.step + 1)
        _check_budget(st, budget)
        if trace is not None:
            trace.append(TraceRecord.of("A", st))


def q_relation(inst: Instance, st: SolverState) -> dict[int, set[int]]:
    """``q_j ~ q_k`` iff some proposer of q_j has q_k in its demand set (includes j ~ j)."""
    rel: dict[int, set[int]] = {j: set() for j in range(inst.n)}
    for i, j in enumerate(st.proposal):
        if j != UNASSIGNED:
            rel[j].update(demand_set(inst, st, i))
    return rel


def connected_from(rel: dict[int, set[int]], sources) -> set[int]:
    """Reflexive-transitive closure of ``rel`` starting from ``sources``."""
    seen = set(sources)
    todo = list(seen)
    while todo:
        j = todo.pop()
        for k in rel[j]:
            if k not in seen:
                seen.add(k)
                todo.append(k)
    return seen


def _counts(st: SolverState, n: int) -> list[int]:
    c = [0] * n
    for j in st.proposal:
        if j != UNASSIGNED:
            c[j] += 1
    return c


def _rigidly_proposed(inst: Instance, st: SolverState) -> set[int]:
    return {j for i, j in enumerate(st.proposal)
            if j != UNASSIGNED and inst.rigid_pairs[i, j]}


def _find_path(inst: Instance, st: SolverState, source: int, targets: set[int]):
    """Breadth-first search for a path ``source ~ ... ~ target``.

    Returns the list of ``(proposer, from_q, to_q)`` hops, or None.
    """
    if source in targets:
        return []
    demand = [demand_set(inst, st, i) if st.proposal[i] != UNASSIGNED else []
              for i in range(inst.n)]
    parent: dict[int, tuple[int, int]] = {}
    seen = {source}
    queue = deque([source])
    while queue:
        j = queue.popleft()
        for i in st.proposers(j):
            for k in demand[i]:
                if k in seen:
                    continue
                seen.add(k)
                parent[k] = (j, i)
                if k in targets:
                    hops = []
                    while k != source:
                        prev, p = parent[k]
                        hops.append((p, prev, k))
                        k = prev
                    return hops[::-1]
                queue.append(k)
    return None


def subprocess_b(inst: Instance, st: SolverState) -> tuple[SolverState, BCase | None]:
    """Apply one augmenting-path step, preferring case 1; ``(st, None)`` if none exists."""
    counts = _counts(st, inst.n)
    sources = [j for j in range(inst.n) if counts[j] > 1]
    empty = {j for j in range(inst.n) if counts[j] == 0}
    for case, targets in ((BCase.CASE1, empty), (BCase.CASE2, _rigidly_proposed(inst, st))):
        for src in sources:
            hops = _find_path(inst, st, src, targets)
            if hops is None:
                continue
            proposal = list(st.proposal)
            barred = st.barred
            end = hops[-1][2] if hops else src
            if case is BCase.CASE2:
                # the rigid proposer of the end point, looked up before shifting
                (s,) = [i for i in _rigid_proposers(inst, st, end)]
                proposal[s] = UNASSIGNED
                barred = barred | {(s, end)}
            for p, _, k in hops:
                proposal[p] = k
            return replace(st, proposal=tuple(proposal), barred=barred), case
    return st, None


def overdemanded_set(inst: Instance, st: SolverState) -> set[int]:
    """Q-agents reachable from over-proposed ones, provided none of the reachable
    agents lacks a proposer or holds a rigid proposal."""
    rel = q_relation(inst, st)
    counts = _counts(st, inst.n)
    bad = {j for j in range(inst.n) if counts[j] == 0} | _rigidly_proposed(inst, st)
    m: set[int] = set()
    for src in (j for j in range(inst.n) if counts[j] > 1):
        reach = connected_from(rel, [src])
        if not reach & bad:
            m |= reach
    return m


def subprocess_c(inst: Instance, st: SolverState) -> SolverState:
    m = overdemanded_set(inst, st)
    if not m:
        raise RuntimeError(f"no over-demanded set although the proposal map is not a matching: {st}")
    prices = tuple(x + 1 if j in m else x for j, x in enumerate(st.prices))
    return reassign_proposals(inst, replace(st, prices=prices))


def step_budget(inst: Instance) -> int:
    """Hard cap on state transitions for one run.

    Prices stay below ``max(max gamma, max alpha) + 1``; the barred set and the
    image of the proposal map grow at most ``n * n`` and ``n`` times.
    """
    n = inst.n
    bound = max(int(inst.gamma.max()), int(inst.alpha.max())) + 1
    return n * (bound + n * n)


def _check_budget(st: SolverState, budget: int | None):
    if budget is not None and st.step > budget:
        raise BudgetExceeded(f"solver exceeded its budget of {budget} steps")


def run(inst: Instance, trace: bool = False, budget: int | None = None) -> SolveResult:
    """Run the auction to completion and return the outcome with the final state."""
    if budget is None:
        budget = step_budget(inst)
    records: list[TraceRecord] | None = [] if trace else None
    st = reassign_proposals(inst, SolverState.initial(inst.n))
    if records is not None:
        records.append(TraceRecord.of("init", st))
    while True:
        st = subprocess_a(inst, st, records, budget)
        if st.is_matching():
            break
        st, case = subprocess_b(inst, st)
        if case is None:
            st = subprocess_c(inst, st)
            tag = "C"
        else:
            tag = f"B:{case.value}"
        st = replace(st, step=st.step + 1)
        _check_budget(st, budget)
        if records is not None:
            records.append(TraceRecord.of(tag, st))
    return SolveResult(extract_outcome(inst, st), st, records or [])


def extract_outcome(inst: Instance, st: SolverState) -> Outcome:
    """Payoffs of a finished run: rigid pairs get their prescribed split, flexible
    pairs leave the price to Q and the rest to P."""
    if not st.is_matching():
        raise ValueError("proposal map is not a matching yet")
    n = inst.n
    u = [0] * n
    v = [0] * n
    for i, j in enumerate(st.proposal):
        if inst.rigid_pairs[i, j]:
            if st.prices[j] != inst.gamma[i, j]:
                raise RuntimeError(f"rigid pair ({i}, {j}) priced at {st.prices[j]}, share {inst.gamma[i, j]}")
            u[i], v[j] = int(inst.beta[i, j]), int(inst.gamma[i, j])
        else:
            u[i], v[j] = int(inst.alpha[i, j]) - st.prices[j], st.prices[j]
    return Outcome(st.proposal, u, v)


def solve(inst: Instance) -> Outcome:
    """Stable outcome found by the auction; P-optimal when the market is non-degenerate."""
    return run(inst).outcome
