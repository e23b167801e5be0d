import itertools

import pytest

from rifle import catalog
from rifle.analysis import (AmbiguousMatching, Coalition, NoCompatibleMatching, comparison_digraph,
                            forced_payoff, is_non_degenerate, iterated_join, iterated_meet, join,
                            matching_from_payoff, meet)
from rifle.core import Outcome, add_reservation_prices, from_assignment
from rifle.io import random_instance
from rifle.oracle import SizeGuardError, p_optimal, stable_outcomes
from rifle.verify import Verdict, classify

import suites

IDENTITY_OPT = Outcome((0, 1), (6, 10), (0, 5))
CROSSED = Outcome((1, 0), (3, 2), (5, 6))


def test_forced_payoff_examples(degenerate_market):
    c = Coalition.of(p=[1], q=[0])
    assert forced_payoff(degenerate_market, (0, 1), c) == 6 + 5
    assert forced_payoff(degenerate_market, (1, 0), c) == 11


def test_forced_payoff_not_forced(weak_market):
    # p1-q1 is flexible and crosses the boundary of {p1}
    assert forced_payoff(weak_market, (0, 1), Coalition.of(p=[0])) is None


def test_non_degeneracy_examples(weak_market, degenerate_market):
    assert is_non_degenerate(weak_market)
    assert is_non_degenerate(from_assignment([[3]]))
    res = is_non_degenerate(degenerate_market)
    assert not res
    w = res.witness
    assert w.coalition == Coalition.of(p=[1], q=[0])
    assert w.value == 11
    assert {w.mu, w.mu2} == {(0, 1), (1, 0)}


def test_non_degeneracy_guard():
    with pytest.raises(SizeGuardError):
        is_non_degenerate(random_instance(6, 3, 0.5, 0))


def subsets(k):
    agents = [("p", i) for i in range(k)] + [("q", j) for j in range(k)]
    for r in range(1, len(agents) + 1):
        yield from itertools.combinations(agents, r)


def as_coalition(agents):
    return Coalition.of([i for s, i in agents if s == "p"], [j for s, j in agents if s == "q"])


def degenerate_by_definition(inst) -> bool:
    """Literal reading: some minimal coalition forced under two matchings with equal
    forced payoffs on which the matchings differ."""
    n = inst.n
    ms = list(itertools.permutations(range(n)))
    for m1, m2 in itertools.combinations(ms, 2):
        forced = [a for a in subsets(n)
                  if forced_payoff(inst, m1, as_coalition(a)) is not None
                  and forced_payoff(inst, m2, as_coalition(a)) is not None]
        fset = set(forced)
        for a in forced:
            if any(b in fset for r in range(1, len(a)) for b in itertools.combinations(a, r)):
                continue
            c = as_coalition(a)
            inv1 = {j: i for i, j in enumerate(m1)}
            inv2 = {j: i for i, j in enumerate(m2)}
            differ = any(m1[i] != m2[i] for i in c.p) or any(inv1[j] != inv2[j] for j in c.q)
            if differ and forced_payoff(inst, m1, c) == forced_payoff(inst, m2, c):
                return True
    return False


@pytest.mark.parametrize("seed", range(120))
def test_non_degeneracy_matches_subset_search(seed):
    inst = random_instance(2 + seed % 2, 3, suites.RIGID_PROBS[seed % 4], seed)
    assert bool(is_non_degenerate(inst)) == (not degenerate_by_definition(inst))


def test_marriage_special_case():
    from rifle.core import from_marriage
    strict = from_marriage([[0, 1], [1, 0]], [[1, 0], [0, 1]])
    assert is_non_degenerate(strict)


def test_digraph_identical_outcomes(blocking_market):
    g = comparison_digraph(blocking_market, IDENTITY_OPT, IDENTITY_OPT)
    assert all(c.two_cycle and c.all_indifferent for c in g.components)
    assert g.max_degree == 2


def test_digraph_blocking_market(blocking_market):
    g = comparison_digraph(blocking_market, IDENTITY_OPT, CROSSED)
    assert len(g.components) == 1
    (comp,) = g.components
    assert sorted(comp.p) == [0, 1] and comp.q == [0, 1]
    assert comp.consistent and comp.orientation == "forward"


def test_digraph_degenerate_market(degenerate_market):
    o1, o2 = catalog.degenerate_outcomes()
    g = comparison_digraph(degenerate_market, o1, o2)
    assert len(g.components) == 1 and len(g.edges) == 4
    assert not g.consistent


def test_digraph_rejects_unstable(blocking_market):
    with pytest.raises(ValueError):
        comparison_digraph(blocking_market, Outcome((0, 1), (2, 10), (4, 5)), IDENTITY_OPT)


def test_join_meet_examples(blocking_market):
    a = Outcome((0, 1), (3, 10), (3, 5))
    b = Outcome((0, 1), (5, 10), (1, 5))
    assert join(blocking_market, a, a) == a
    assert meet(blocking_market, a, a) == a
    assert join(blocking_market, a, b) == b
    assert meet(blocking_market, a, b) == a
    assert join(blocking_market, IDENTITY_OPT, CROSSED) == IDENTITY_OPT
    assert meet(blocking_market, IDENTITY_OPT, CROSSED) == CROSSED


def test_degenerate_join_meet(degenerate_market):
    o1, o2 = catalog.degenerate_outcomes()
    with pytest.raises(NoCompatibleMatching):
        join(degenerate_market, o1, o2)
    with pytest.raises(NoCompatibleMatching):
        meet(degenerate_market, o1, o2)


def test_matching_from_payoff(auction_market):
    o = catalog.auction_outcome()
    assert matching_from_payoff(auction_market, o.u, o.v) == (1, 0, 3, 2, 4)
    assert matching_from_payoff(auction_market, (-1, 8, 11, 8, 7), o.v) is None


def test_matching_from_payoff_ambiguous():
    # every pair is worth 2, so an even split is stable under both matchings
    inst = from_assignment([[2, 2], [2, 2]])
    with pytest.raises(AmbiguousMatching):
        matching_from_payoff(inst, (1, 1), (1, 1))


def nondegenerate_instances(count=60):
    for inst in suites.oracle_suite(count):
        if inst.n <= 3 and is_non_degenerate(inst):
            yield inst


@pytest.mark.parametrize("inst", list(nondegenerate_instances()), ids=lambda i: f"n{i.n}")
def test_lattice_structure(inst):
    ss = list(stable_outcomes(inst))
    for a, b in itertools.combinations(ss, 2):
        g = comparison_digraph(inst, a, b)
        assert g.max_degree <= 2
        assert g.consistent
        assert all(not c.flexible_prefers_indifferent for c in g.components)
        assert join(inst, a, b, search=False) in ss
        assert meet(inst, a, b, search=False) in ss
        strong = [classify(inst, x) is Verdict.STRONGLY_STABLE for x in (a, b)]
        if all(strong):
            assert classify(inst, join(inst, a, b)) is Verdict.STRONGLY_STABLE
            assert classify(inst, meet(inst, a, b)) is Verdict.STRONGLY_STABLE
        assert matching_from_payoff(inst, a.u, a.v) == a.matching
    assert iterated_join(inst, ss) == p_optimal(ss)
    low = iterated_meet(inst, ss)
    assert all(min(x.u[i] for x in ss) == low.u[i] for i in range(inst.n))
    assert all(max(x.v[j] for x in ss) == low.v[j] for j in range(inst.n))


def test_padded_digraph_has_no_real_paths():
    checked = 0
    for inst in suites.padded_suite(60):
        if inst.n_real > 2 or not is_non_degenerate(inst):
            continue
        ss = list(stable_outcomes(inst))
        for a, b in itertools.combinations(ss, 2):
            assert comparison_digraph(inst, a, b).real_paths == []
        checked += 1
    assert checked > 0


def test_padded_non_degeneracy_guard():
    base = random_instance(5, 2, 0.5, 3)
    with pytest.raises(SizeGuardError):
        is_non_degenerate(add_reservation_prices(base, [1] * 5, [1] * 5))
