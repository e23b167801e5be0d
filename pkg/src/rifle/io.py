"""Instance files, JSON report documents and the seeded instance generator.

Instance file format (1-based indices, ``#`` starts a comment line)::

    n 2
    rigidP 0 1
    rigidQ 0 1
    pair 1 1 3 3
    pair 1 2 3 6
    pair 2 1 2 5
    pair 2 2 10 5
"""
from __future__ import annotations

import hashlib

import numpy as np

from .core import Instance, Outcome
from .verify import StabilityReport


class InstanceParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + msg)
        self.line = line
        self.column = column


def _ints(tokens, lineno, start_col):
    out = []
    for k, tok in enumerate(tokens):
        try:
            x = int(tok)
        except ValueError:
            raise InstanceParseError(f"expected an integer, got {tok!r}", lineno, start_col + k) from None
        out.append(x)
    return out


def parse_instance(text: str) -> Instance:
    n = None
    rigid = {}
    pairs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, *rest = line.split()
        if head == "n":
            if n is not None:
                raise InstanceParseError("duplicate 'n' line", lineno)
            vals = _ints(rest, lineno, 2)
            if len(vals) != 1 or vals[0] < 1:
                raise InstanceParseError("'n' needs one positive integer", lineno)
            n = vals[0]
        elif head in ("rigidP", "rigidQ"):
            if n is None:
                raise InstanceParseError(f"'{head}' before 'n'", lineno)
            if head in rigid:
                raise InstanceParseError(f"duplicate '{head}' line", lineno)
            vals = _ints(rest, lineno, 2)
            if len(vals) != n or any(x not in (0, 1) for x in vals):
                raise InstanceParseError(f"'{head}' needs {n} flags of 0 or 1", lineno)
            rigid[head] = vals
        elif head == "pair":
            if n is None:
                raise InstanceParseError("'pair' before 'n'", lineno)
            vals = _ints(rest, lineno, 2)
            if len(vals) != 4:
                raise InstanceParseError("'pair' needs i j beta gamma", lineno)
            i, j, b, g = vals
            if not (1 <= i <= n and 1 <= j <= n):
                raise InstanceParseError(f"pair index ({i}, {j}) out of range 1..{n}", lineno, 2)
            if b < 0 or g < 0:
                raise InstanceParseError("pair values must be nonnegative", lineno, 4)
            if (i, j) in pairs:
                raise InstanceParseError(f"duplicate pair ({i}, {j})", lineno)
            pairs[i, j] = (b, g)
        else:
            raise InstanceParseError(f"unknown directive {head!r}", lineno, 1)
    if n is None:
        raise InstanceParseError("missing 'n' line")
    for key in ("rigidP", "rigidQ"):
        if key not in rigid:
            raise InstanceParseError(f"missing '{key}' line")
    missing = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if (i, j) not in pairs]
    if missing:
        raise InstanceParseError(f"missing pair line for {missing[0]} ({len(missing)} missing)")
    beta = np.zeros((n, n), dtype=np.int64)
    gamma = np.zeros((n, n), dtype=np.int64)
    for (i, j), (b, g) in pairs.items():
        beta[i - 1, j - 1] = b
        gamma[i - 1, j - 1] = g
    return Instance(beta, gamma, np.array(rigid["rigidP"], bool), np.array(rigid["rigidQ"], bool))


def serialize_instance(inst: Instance) -> str:
    lines = [f"n {inst.n}",
             "rigidP " + " ".join(str(int(x)) for x in inst.rigid_p),
             "rigidQ " + " ".join(str(int(x)) for x in inst.rigid_q)]
    for i in range(inst.n):
        for j in range(inst.n):
            lines.append(f"pair {i + 1} {j + 1} {inst.beta[i, j]} {inst.gamma[i, j]}")
    return "\n".join(lines) + "\n"


def instance_digest(inst: Instance) -> str:
    return hashlib.sha256(serialize_instance(inst).encode()).hexdigest()


def random_instance(n: int, max_value: int, rigid_prob: float, seed: int) -> Instance:
    """Deterministic pseudo-random instance: flags first, then beta, then gamma."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if max_value < 0:
        raise ValueError("max_value must be nonnegative")
    if not 0.0 <= rigid_prob <= 1.0:
        raise ValueError("rigid_prob must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    rigid_p = rng.random(n) < rigid_prob
    rigid_q = rng.random(n) < rigid_prob
    beta = rng.integers(0, max_value + 1, size=(n, n))
    gamma = rng.integers(0, max_value + 1, size=(n, n))
    return Instance(beta, gamma, rigid_p, rigid_q)


# JSON documents: matchings are lists of 1-based Q-indices, pairs are 1-based [i, j]

def outcome_to_json(o: Outcome) -> dict:
    return {"matching": [j + 1 for j in o.matching], "u": list(o.u), "v": list(o.v)}


def outcome_from_json(doc: dict) -> Outcome:
    try:
        return Outcome([int(j) - 1 for j in doc["matching"]], doc["u"], doc["v"])
    except KeyError as e:
        raise ValueError(f"outcome document lacks {e.args[0]!r}") from None


def pairs_to_json(pairs) -> list[list[int]]:
    return [[i + 1, j + 1] for i, j in pairs]


def stability_to_json(rep: StabilityReport) -> tuple[str, dict]:
    f = rep.feasibility
    return rep.verdict.name, {
        "blocking_pairs": pairs_to_json(rep.blocking_pairs),
        "weak_blocking_pairs": pairs_to_json(rep.weak_blocking_pairs),
        "side_payment_pairs": pairs_to_json(rep.side_payment_pairs),
        "violations": {
            "individual_rationality": [f"{side}{k + 1}" for side, k in f.ir_violations],
            "rigidity": pairs_to_json(f.rigidity_violations),
            "pareto_gap": f.pareto_gap,
        },
    }
