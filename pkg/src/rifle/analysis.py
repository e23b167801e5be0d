"""Non-degeneracy, comparison digraphs and the lattice operations on stable outcomes."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .core import Instance, Outcome, reservation_prices
from .oracle import MAX_ORACLE_N, SizeGuardError, enumerate_matchings
from .verify import is_stable

MAX_NONDEGEN_N = 5
MAX_NONDEGEN_REAL_N = 4

UNMATCHED = -1


class NoCompatibleMatching(ValueError):
    """The target payoff of a join or meet fits no stable matching."""


class AmbiguousMatching(ValueError):
    """More than one matching is compatible with a stable payoff."""


@dataclass(frozen=True)
class Coalition:
    p: frozenset[int] = frozenset()
    q: frozenset[int] = frozenset()

    @classmethod
    def of(cls, p: Iterable[int] = (), q: Iterable[int] = ()) -> "Coalition":
        return cls(frozenset(p), frozenset(q))

    def __len__(self):
        return len(self.p) + len(self.q)


@dataclass(frozen=True)
class Witness:
    """Two matchings that differ on a minimal doubly forced coalition with equal forced payoff.

    For instances with reservation dummies the matchings are given on real
    agents only, ``UNMATCHED`` marking an agent left to its reservation price.
    """

    mu: tuple[int, ...]
    mu2: tuple[int, ...]
    coalition: Coalition
    value: int


@dataclass(frozen=True)
class NonDegeneracy:
    ok: bool
    witness: Witness | None = None

    def __bool__(self):
        return self.ok


def forced_payoff(inst: Instance, m: Sequence[int], c: Coalition) -> int | None:
    """Total payoff of ``c`` under ``m`` if every matched pair crossing its boundary
    is rigid, else None."""
    total = 0
    for i, j in enumerate(m):
        pin, qin = i in c.p, j in c.q
        if pin != qin and not inst.rigid_pairs[i, j]:
            return None
        if pin:
            total += int(inst.beta[i, j])
        if qin:
            total += int(inst.gamma[i, j])
    return total


def _partial_matchings(k: int) -> Iterator[tuple[int, ...]]:
    """Every partial matching of ``k`` P-agents into ``k`` Q-agents."""
    for size in range(k + 1):
        for ps in itertools.combinations(range(k), size):
            for qs in itertools.permutations(range(k), size):
                m = [UNMATCHED] * k
                for i, j in zip(ps, qs):
                    m[i] = j
                yield tuple(m)


class _Market:
    """The real agents of an instance with reservation prices for the unmatched.

    Without dummies every agent is real and matchings are perfect.
    """

    def __init__(self, inst: Instance):
        self.inst = inst
        if inst.n_real is None:
            self.k = inst.n
            self.u_r = self.v_r = None
        else:
            self.k = inst.n_real
            self.u_r, self.v_r = reservation_prices(inst)

    def matchings(self):
        if self.u_r is None:
            return enumerate_matchings(self.k)
        return _partial_matchings(self.k)

    def p_share(self, i, m):
        j = m[i]
        return int(self.u_r[i]) if j == UNMATCHED else int(self.inst.beta[i, j])

    def q_share(self, j, inv):
        i = inv[j]
        return int(self.v_r[j]) if i == UNMATCHED else int(self.inst.gamma[i, j])


def _inverse(m: Sequence[int], k: int) -> list[int]:
    inv = [UNMATCHED] * k
    for i, j in enumerate(m):
        if j != UNMATCHED:
            inv[j] = i
    return inv


def _flexible_components(inst: Instance, k: int, ms) -> list[Coalition]:
    """Connected components of the agents under the flexible matched pairs of ``ms``.

    A coalition is forced under a matching exactly when no flexible pair of it
    crosses the boundary, so the minimal coalitions forced under every matching
    in ``ms`` are these components.
    """
    parent = list(range(2 * k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in ms:
        for i, j in enumerate(m):
            if j != UNMATCHED and not inst.rigid_pairs[i, j]:
                parent[find(i)] = find(k + j)
    groups: dict[int, list[int]] = {}
    for x in range(2 * k):
        groups.setdefault(find(x), []).append(x)
    return [Coalition.of([x for x in g if x < k], [x - k for x in g if x >= k])
            for g in groups.values()]


def is_non_degenerate(inst: Instance) -> NonDegeneracy:
    """Check that no two matchings tie on a minimal doubly forced coalition they split differently.

    On instances built by :func:`rifle.core.add_reservation_prices` the check
    runs over partial matchings of the real agents, an unmatched agent being
    forced to its reservation price.
    """
    mk = _Market(inst)
    limit = MAX_NONDEGEN_N if mk.u_r is None else MAX_NONDEGEN_REAL_N
    if mk.k > limit:
        raise SizeGuardError(f"{mk.k} agents per side exceeds the non-degeneracy guard {limit}")
    k = mk.k
    ms = list(mk.matchings())
    invs = [_inverse(m, k) for m in ms]
    for a, b in itertools.combinations(range(len(ms)), 2):
        m1, m2 = ms[a], ms[b]
        inv1, inv2 = invs[a], invs[b]
        for c in _flexible_components(inst, k, (m1, m2)):
            if all(m1[i] == m2[i] for i in c.p) and all(inv1[j] == inv2[j] for j in c.q):
                continue
            f1 = sum(mk.p_share(i, m1) for i in c.p) + sum(mk.q_share(j, inv1) for j in c.q)
            f2 = sum(mk.p_share(i, m2) for i in c.p) + sum(mk.q_share(j, inv2) for j in c.q)
            if f1 == f2:
                return NonDegeneracy(False, Witness(m1, m2, c, f1))
    return NonDegeneracy(True)


# comparison digraph

@dataclass(frozen=True)
class Edge:
    p: int
    q: int
    source: int  # 1 or 2: the outcome the pair comes from
    direction: str | None  # "to_q" (P prefers it), "to_p" (Q prefers it) or None


@dataclass
class Component:
    p: list[int]
    q: list[int]
    edges: list[Edge]
    orientation: str  # "forward", "backward", "none" or "mixed"
    kind: str = "cycle"  # "cycle", or "path" once dummy agents are cut away
    two_cycle: bool = False
    all_indifferent: bool = False
    flexible_prefers_indifferent: list[Edge] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return self.orientation != "mixed"


@dataclass
class ComparisonDigraph:
    """Union of the two matchings with each edge directed by strict preference.

    ``forward`` on a component means P-agents weakly prefer outcome 1 there and
    Q-agents weakly prefer outcome 2.
    """

    n: int
    edges: list[Edge]
    components: list[Component]

    @property
    def max_degree(self) -> int:
        deg: dict[tuple[str, int], int] = {}
        for e in self.edges:
            deg[("p", e.p)] = deg.get(("p", e.p), 0) + 1
            deg[("q", e.q)] = deg.get(("q", e.q), 0) + 1
        return max(deg.values(), default=0)

    @property
    def consistent(self) -> bool:
        return all(c.consistent for c in self.components)

    @property
    def real_paths(self) -> list[Component]:
        return [c for c in self.components if c.kind == "path"]


def _pref(a: int, b: int) -> int:
    return (a > b) - (a < b)


def comparison_digraph(inst: Instance, o1: Outcome, o2: Outcome) -> ComparisonDigraph:
    """Build the comparison digraph of two stable outcomes.

    Raises ValueError if an input is not stable, since only then are the edge
    directions guaranteed to be consistent (no bidirected edge).
    """
    for o in (o1, o2):
        if not is_stable(inst, o):
            raise ValueError(f"outcome {o} is not stable")
    n = inst.n
    pp = [_pref(o1.u[i], o2.u[i]) for i in range(n)]   # +1: p_i prefers outcome 1
    qp = [_pref(o1.v[j], o2.v[j]) for j in range(n)]
    rigid_p, rigid_q = inst.rigid_p, inst.rigid_q

    def make_edge(i, j, src):
        sign = 1 if src == 1 else -1
        to_q, to_p = pp[i] * sign > 0, qp[j] * sign > 0
        if to_q and to_p:
            raise ValueError(f"edge ({i}, {j}) of outcome {src} is bidirected")
        return Edge(i, j, src, "to_q" if to_q else "to_p" if to_p else None)

    edges = [make_edge(i, j, 1) for i, j in enumerate(o1.matching)]
    edges += [make_edge(i, j, 2) for i, j in enumerate(o2.matching)]
    inv2 = _inverse(o2.matching, n)

    real = inst.n_real
    comps = []
    seen = set()
    for start in range(n):
        if start in seen:
            continue
        ps, qs = [], []
        i = start
        while i not in seen:
            seen.add(i)
            ps.append(i)
            j = o1.matching[i]
            qs.append(j)
            i = inv2[j]
        pset, qset = set(ps), set(qs)
        cedges = [e for e in edges if e.p in pset]
        fwd = any(pp[i] > 0 for i in ps) or any(qp[j] < 0 for j in qs)
        bwd = any(pp[i] < 0 for i in ps) or any(qp[j] > 0 for j in qs)
        orientation = "mixed" if fwd and bwd else "forward" if fwd else "backward" if bwd else "none"
        comp = Component(ps, sorted(qs), cedges, orientation)
        comp.two_cycle = len(ps) == 1
        comp.all_indifferent = orientation == "none"
        for e in cedges:
            # an indifferent agent preferred by a flexible partner
            p_indiff, q_indiff = pp[e.p] == 0, qp[e.q] == 0
            if (e.direction == "to_p" and p_indiff and not rigid_q[e.q]) or \
               (e.direction == "to_q" and q_indiff and not rigid_p[e.p]):
                comp.flexible_prefers_indifferent.append(e)
        if real is not None:
            # a real agent matched to a real partner in one outcome and to a dummy in the other
            inv1 = _inverse(o1.matching, n)
            comp.kind = "path" if any(
                (o1.matching[i] < real) != (o2.matching[i] < real) for i in ps if i < real) or any(
                (inv1[j] < real) != (inv2[j] < real) for j in qs if j < real) else "cycle"
        comps.append(comp)
    return ComparisonDigraph(n, edges, comps)


def _assemble(inst: Instance, o1: Outcome, o2: Outcome, p_side: bool) -> Outcome:
    g = comparison_digraph(inst, o1, o2)
    n = inst.n
    m, u, v = [0] * n, [0] * n, [0] * n
    want = "forward" if p_side else "backward"
    for comp in g.components:
        src = o2 if comp.orientation not in (want, "none") else o1
        for i in comp.p:
            j = src.matching[i]
            m[i], u[i], v[j] = j, src.u[i], src.v[j]
    return Outcome(m, u, v)


def _lattice_op(inst: Instance, o1: Outcome, o2: Outcome, p_side: bool, search: bool) -> Outcome:
    pick_u, pick_v = (max, min) if p_side else (min, max)
    u = tuple(pick_u(a, b) for a, b in zip(o1.u, o2.u))
    v = tuple(pick_v(a, b) for a, b in zip(o1.v, o2.v))
    cand = _assemble(inst, o1, o2, p_side)
    if cand.u == u and cand.v == v and is_stable(inst, cand):
        return cand
    if search and inst.n <= MAX_ORACLE_N:
        found = compatible_matchings(inst, u, v)
        if found:
            return Outcome(found[0], u, v)
    raise NoCompatibleMatching(f"no stable matching is compatible with u={list(u)}, v={list(v)}")


def join(inst: Instance, o1: Outcome, o2: Outcome, search: bool = True) -> Outcome:
    """Least upper bound under the P-order: P-agents get the better, Q-agents the worse payoff.

    The matching is taken per component of the comparison digraph from the
    outcome P-agents prefer there. If that does not produce a stable outcome
    with the target payoff (possible only in degenerate markets) and ``search``
    is set, all matchings are tried before giving up.
    """
    return _lattice_op(inst, o1, o2, True, search)


def meet(inst: Instance, o1: Outcome, o2: Outcome, search: bool = True) -> Outcome:
    """Greatest lower bound under the P-order; dual of :func:`join`."""
    return _lattice_op(inst, o1, o2, False, search)


def compatible_matchings(inst: Instance, u: Sequence[int], v: Sequence[int]) -> list[tuple[int, ...]]:
    """All matchings that make ``(u, v)`` a stable outcome."""
    if inst.n > MAX_ORACLE_N:
        raise SizeGuardError(f"n={inst.n} exceeds the matching search guard {MAX_ORACLE_N}")
    if min(u) < 0 or min(v) < 0:
        return []
    n = inst.n
    alpha = inst.alpha
    # stable outcomes have no side payments, so only exact pairs can be matched
    ok = [[u[i] + v[j] == alpha[i, j] for j in range(n)] for i in range(n)]
    out = []
    for m in enumerate_matchings(n):
        if all(ok[i][j] for i, j in enumerate(m)) and is_stable(inst, Outcome(m, u, v)):
            out.append(m)
    return out


def matching_from_payoff(inst: Instance, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...] | None:
    """The unique matching compatible with a stable payoff, or None if there is none.

    Raises :class:`AmbiguousMatching` if several matchings fit.
    """
    found = compatible_matchings(inst, u, v)
    if len(found) > 1:
        raise AmbiguousMatching(f"{len(found)} matchings are compatible: {found}")
    return found[0] if found else None


def iterated_join(inst: Instance, outcomes: Iterable[Outcome]) -> Outcome:
    it = iter(outcomes)
    acc = next(it)
    for o in it:
        acc = join(inst, acc, o)
    return acc


def iterated_meet(inst: Instance, outcomes: Iterable[Outcome]) -> Outcome:
    it = iter(outcomes)
    acc = next(it)
    for o in it:
        acc = meet(inst, acc, o)
    return acc
