"""Feasibility, stability and strong stability of outcomes."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum

from .core import Instance, Outcome, total_productivity


class Verdict(IntEnum):
    """Ordered so that a higher verdict implies every lower one."""

    INFEASIBLE = 0
    FEASIBLE = 1
    STABLE = 2
    STRONGLY_STABLE = 3


@dataclass
class FeasibilityReport:
    # agents as ("p", i) / ("q", j)
    ir_violations: list[tuple[str, int]] = field(default_factory=list)
    rigidity_violations: list[tuple[int, int]] = field(default_factory=list)
    pareto_gap: int = 0

    @property
    def feasible(self) -> bool:
        return not self.ir_violations and not self.rigidity_violations and self.pareto_gap == 0


@dataclass
class StabilityReport:
    verdict: Verdict
    feasibility: FeasibilityReport
    blocking_pairs: list[tuple[int, int]] = field(default_factory=list)
    weak_blocking_pairs: list[tuple[int, int]] = field(default_factory=list)
    side_payment_pairs: list[tuple[int, int]] = field(default_factory=list)


def _check_dims(inst: Instance, o: Outcome):
    if o.n != inst.n:
        raise ValueError(f"outcome of size {o.n} for instance of size {inst.n}")


def check_feasibility(inst: Instance, o: Outcome) -> FeasibilityReport:
    _check_dims(inst, o)
    beta, gamma = inst.beta, inst.gamma
    rep = FeasibilityReport()
    rep.ir_violations = [("p", i) for i, x in enumerate(o.u) if x < 0]
    rep.ir_violations += [("q", j) for j, x in enumerate(o.v) if x < 0]
    for i, j in enumerate(o.matching):
        b, g = int(beta[i, j]), int(gamma[i, j])
        rp, rq = bool(inst.rigid_p[i]), bool(inst.rigid_q[j])
        bad = ((rp and o.u[i] != b) or (rq and o.v[j] != g)
               or (rq and not rp and o.u[i] < b)
               or (rp and not rq and o.v[j] < g))
        if bad:
            rep.rigidity_violations.append((i, j))
    rep.pareto_gap = sum(o.u) + sum(o.v) - total_productivity(inst, o.matching)
    return rep


def blocking_pairs(inst: Instance, o: Outcome) -> list[tuple[int, int]]:
    """Every pair, matched or not, that violates its stability inequality."""
    _check_dims(inst, o)
    out = []
    for i in range(inst.n):
        for j in range(inst.n):
            if inst.rigid_pairs[i, j]:
                if o.u[i] < inst.beta[i, j] and o.v[j] < inst.gamma[i, j]:
                    out.append((i, j))
            elif o.u[i] + o.v[j] < inst.alpha[i, j]:
                out.append((i, j))
    return out


def weak_blocking_pairs(inst: Instance, o: Outcome) -> list[tuple[int, int]]:
    """Rigid pairs where one agent gets exactly its share and the other would gain.

    Flexible pairs are never weakly blocking: the gaining side can share.
    """
    _check_dims(inst, o)
    out = []
    for i in range(inst.n):
        for j in range(inst.n):
            if not inst.rigid_pairs[i, j]:
                continue
            b, g = inst.beta[i, j], inst.gamma[i, j]
            if (o.u[i] == b and o.v[j] < g) or (o.v[j] == g and o.u[i] < b):
                out.append((i, j))
    return out


def side_payment_pairs(inst: Instance, o: Outcome) -> list[tuple[int, int]]:
    _check_dims(inst, o)
    return [(i, j) for i, j in enumerate(o.matching)
            if o.u[i] + o.v[j] != inst.alpha[i, j]]


def stability_report(inst: Instance, o: Outcome) -> StabilityReport:
    feas = check_feasibility(inst, o)
    rep = StabilityReport(
        verdict=Verdict.INFEASIBLE,
        feasibility=feas,
        blocking_pairs=blocking_pairs(inst, o),
        weak_blocking_pairs=weak_blocking_pairs(inst, o),
        side_payment_pairs=side_payment_pairs(inst, o),
    )
    if not feas.feasible:
        return rep
    if rep.blocking_pairs:
        rep.verdict = Verdict.FEASIBLE
        return rep
    # a stable outcome never carries side payments
    assert not rep.side_payment_pairs, (inst, o, rep.side_payment_pairs)
    rep.verdict = Verdict.STRONGLY_STABLE if not rep.weak_blocking_pairs else Verdict.STABLE
    return rep


def classify(inst: Instance, o: Outcome) -> Verdict:
    return stability_report(inst, o).verdict


def is_stable(inst: Instance, o: Outcome) -> bool:
    return classify(inst, o) >= Verdict.STABLE
