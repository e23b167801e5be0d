"""Command-line entry point: ``rifle {solve,verify,oracle,lattice,nondegen,gen}``.

Every command except ``gen`` reads an instance file and prints a JSON report
(or a plain-text rendering with ``--text``). Exit status is 0 whenever a
verdict was computed, 2 on bad input, size guards or an exceeded solver budget.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

from . import analysis, oracle, solver
from .core import Instance, Outcome
from .io import (InstanceParseError, instance_digest, outcome_from_json, outcome_to_json,
                 pairs_to_json, parse_instance, random_instance, serialize_instance,
                 stability_to_json)
from .verify import stability_report


class CommandError(Exception):
    pass


def _load(path: str) -> Instance:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise CommandError(f"cannot read {path}: {e.strerror}") from None
    try:
        return parse_instance(text)
    except InstanceParseError as e:
        raise CommandError(f"{path}: {e}") from None


def _base(command: str, inst: Instance) -> dict:
    return {"command": command, "instance_digest": instance_digest(inst)}


def _trace_to_json(records) -> list[dict]:
    return [{"subprocess": r.tag,
             "prices": list(r.prices),
             "proposal": [j + 1 if j != solver.UNASSIGNED else None for j in r.proposal],
             "barred": pairs_to_json(r.barred)} for r in records]


def cmd_solve(inst: Instance, trace: bool = False) -> dict:
    try:
        res = solver.run(inst, trace=trace)
    except solver.BudgetExceeded as e:
        raise CommandError(str(e)) from None
    verdict, diag = stability_to_json(stability_report(inst, res.outcome))
    doc = _base("solve", inst)
    doc.update(outcome=outcome_to_json(res.outcome), verdict=verdict, diagnostics=diag)
    if trace:
        doc["trace"] = _trace_to_json(res.trace)
    return doc


def cmd_verify(inst: Instance, outcome: Outcome) -> dict:
    try:
        rep = stability_report(inst, outcome)
    except ValueError as e:
        raise CommandError(str(e)) from None
    verdict, diag = stability_to_json(rep)
    doc = _base("verify", inst)
    doc.update(outcome=outcome_to_json(outcome), verdict=verdict, diagnostics=diag)
    return doc


def _stable_set(inst: Instance) -> oracle.StableSet:
    try:
        return oracle.stable_outcomes(inst)
    except oracle.SizeGuardError as e:
        raise CommandError(str(e)) from None


def _p_optimal_json(outcomes):
    try:
        return outcome_to_json(oracle.p_optimal(outcomes))
    except oracle.NotUnique:
        return "NotUnique"


def cmd_oracle(inst: Instance) -> dict:
    ss = _stable_set(inst)
    doc = _base("oracle", inst)
    doc.update(count=len(ss), outcomes=[outcome_to_json(o) for o in ss],
               p_optimal=_p_optimal_json(ss))
    return doc


def cmd_lattice(inst: Instance) -> dict:
    """Check that join and meet of every pair of oracle outcomes are again oracle outcomes."""
    ss = _stable_set(inst)
    failing = None
    for a, b in itertools.combinations(ss, 2):
        try:
            ok = analysis.join(inst, a, b) in ss and analysis.meet(inst, a, b) in ss
        except analysis.NoCompatibleMatching:
            ok = False
        if not ok:
            failing = [outcome_to_json(a), outcome_to_json(b)]
            break
    doc = _base("lattice", inst)
    doc.update(count=len(ss), closed=failing is None, failing_pair=failing,
               p_optimal=_p_optimal_json(ss))
    return doc


def cmd_nondegen(inst: Instance) -> dict:
    try:
        res = analysis.is_non_degenerate(inst)
    except oracle.SizeGuardError as e:
        raise CommandError(str(e)) from None
    doc = _base("nondegen", inst)
    doc["non_degenerate"] = res.ok
    w = res.witness
    doc["witness"] = None if w is None else {
        "mu": [j + 1 if j >= 0 else None for j in w.mu],
        "mu2": [j + 1 if j >= 0 else None for j in w.mu2],
        "coalition": {"p": sorted(i + 1 for i in w.coalition.p),
                      "q": sorted(j + 1 for j in w.coalition.q)},
        "value": w.value,
    }
    return doc


def cmd_gen(n: int, max_value: int, rigid_prob: float, seed: int) -> str:
    try:
        return serialize_instance(random_instance(n, max_value, rigid_prob, seed))
    except ValueError as e:
        raise CommandError(str(e)) from None


# text rendering

def _fmt_matching(m) -> str:
    return "[" + ",".join("-" if j is None else f"q{j}" for j in m) + "]"


def value_table(inst: Instance, rec) -> list[str]:
    """Rows of the value matrix at a trace record; demanded entries are bracketed."""
    st = solver.SolverState(rec.prices, rec.proposal, frozenset(rec.barred))
    n = inst.n
    lines = ["      " + "".join(f"{'q' + str(j + 1):>6}" for j in range(n))]
    for i in range(n):
        d = set(solver.demand_set(inst, st, i))
        cells = []
        for j in range(n):
            x = str(solver.value(inst, st, i, j))
            cells.append(f"{'[' + x + ']' if j in d else x:>6}")
        lines.append(f"{'p' + str(i + 1):<6}" + "".join(cells))
    return lines


def render_text(doc: dict, inst: Instance | None = None, records=None) -> str:
    out = [f"{doc['command']}  instance {doc.get('instance_digest', '')[:12]}"]
    if records:
        for rec, entry in zip(records, doc["trace"]):
            out.append(f"-- {entry['subprocess']}: v={entry['prices']} matching={_fmt_matching(entry['proposal'])}")
            out.extend(value_table(inst, rec))
    if "outcome" in doc:
        o = doc["outcome"]
        out.append(f"matching={_fmt_matching(o['matching'])}  u={o['u']}  v={o['v']}")
    if "verdict" in doc:
        out.append(f"verdict: {doc['verdict']}")
        diag = doc["diagnostics"]
        for key in ("blocking_pairs", "weak_blocking_pairs", "side_payment_pairs"):
            if diag[key]:
                out.append(f"{key}: {diag[key]}")
        viol = diag["violations"]
        if viol["individual_rationality"] or viol["rigidity"] or viol["pareto_gap"]:
            out.append(f"violations: {viol}")
    if doc["command"] in ("oracle", "lattice"):
        out.append(f"stable outcomes: {doc['count']}")
        if doc["command"] == "oracle":
            for o in doc["outcomes"]:
                out.append(f"  matching={_fmt_matching(o['matching'])}  u={o['u']}  v={o['v']}")
        else:
            out.append(f"closed under join/meet: {doc['closed']}")
            if doc["failing_pair"]:
                out.append(f"failing pair: {doc['failing_pair']}")
        out.append(f"P-optimal: {doc['p_optimal']}")
    if doc["command"] == "nondegen":
        out.append(f"non-degenerate: {doc['non_degenerate']}")
        if doc["witness"]:
            out.append(f"witness: {doc['witness']}")
    return "\n".join(out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rifle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def with_format(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--json", dest="fmt", action="store_const", const="json", default="json")
        g.add_argument("--text", dest="fmt", action="store_const", const="text")
        return p

    p = with_format(sub.add_parser("solve", help="run the auction and verify its outcome"))
    p.add_argument("file")
    p.add_argument("--trace", action="store_true", help="include every solver state transition")

    p = with_format(sub.add_parser("verify", help="classify a given outcome"))
    p.add_argument("file")
    p.add_argument("outcome_file", help="JSON document {matching, u, v} with 1-based indices")

    for name, text in (("oracle", "enumerate all integer stable outcomes"),
                       ("lattice", "check join/meet closure of the stable set"),
                       ("nondegen", "check the non-degeneracy condition")):
        p = with_format(sub.add_parser(name, help=text))
        p.add_argument("file")

    p = sub.add_parser("gen", help="print a seeded random instance file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-value", type=int, required=True)
    p.add_argument("--rigid-prob", type=float, default=0.5)
    p.add_argument("--seed", type=int, required=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            sys.stdout.write(cmd_gen(args.n, args.max_value, args.rigid_prob, args.seed))
            return 0
        inst = _load(args.file)
        records = None
        if args.command == "solve":
            doc = cmd_solve(inst, trace=args.trace)
            if args.trace:
                records = solver.run(inst, trace=True).trace
        elif args.command == "verify":
            try:
                outcome = outcome_from_json(json.loads(Path(args.outcome_file).read_text()))
            except (OSError, ValueError, TypeError) as e:
                raise CommandError(f"{args.outcome_file}: {e}") from None
            doc = cmd_verify(inst, outcome)
        else:
            doc = {"oracle": cmd_oracle, "lattice": cmd_lattice, "nondegen": cmd_nondegen}[args.command](inst)
    except CommandError as e:
        print(f"rifle: error: {e}", file=sys.stderr)
        return 2
    if args.fmt == "text":
        print(render_text(doc, inst, records))
    else:
        print(json.dumps(doc, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
