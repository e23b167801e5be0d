"""Market instances, matchings and outcomes of the rigid/flexible assignment game.

P-agents are rows and Q-agents are columns. Every pair ``(i, j)`` carries a
prescribed split ``(beta[i, j], gamma[i, j])`` of its productivity
``alpha = beta + gamma``. Indices are 0-based throughout the library; the
file format and reports in :mod:`rifle.cli` use 1-based indices.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

Matching = tuple[int, ...]
"""``matching[i]`` is the Q-index matched to P-agent ``i``."""


class PairClass(Enum):
    RIGID = "rigid"
    FLEXIBLE = "flexible"


def _frozen_int_matrix(a, name: str) -> np.ndarray:
    arr = np.array(a, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {arr.shape}")
    if arr.size and arr.min() < 0:
        raise ValueError(f"{name} has a negative entry")
    arr.setflags(write=False)
    return arr


def _frozen_flags(flags, n: int, name: str) -> np.ndarray:
    arr = np.array(flags, dtype=bool).reshape(-1)
    if arr.shape != (n,):
        raise ValueError(f"{name} must have length {n}, got {arr.shape[0]}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Instance:
    """A square market: ``n`` P-agents, ``n`` Q-agents, integer shares and rigidity flags.

    ``n_real`` is set on instances built by :func:`add_reservation_prices`; the
    first ``n_real`` agents on each side are real, the rest are dummies.
    """

    beta: np.ndarray
    gamma: np.ndarray
    rigid_p: np.ndarray
    rigid_q: np.ndarray
    n_real: int | None = None

    def __post_init__(self):
        beta = _frozen_int_matrix(self.beta, "beta")
        gamma = _frozen_int_matrix(self.gamma, "gamma")
        if beta.shape != gamma.shape:
            raise ValueError(f"beta {beta.shape} and gamma {gamma.shape} differ in shape")
        n = beta.shape[0]
        if n < 1:
            raise ValueError("an instance needs at least one agent per side")
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "rigid_p", _frozen_flags(self.rigid_p, n, "rigid_p"))
        object.__setattr__(self, "rigid_q", _frozen_flags(self.rigid_q, n, "rigid_q"))
        if self.n_real is not None and not 0 < self.n_real <= n:
            raise ValueError(f"n_real={self.n_real} out of range for n={n}")
        alpha = beta + gamma
        alpha.setflags(write=False)
        rigid = self.rigid_p[:, None] | self.rigid_q[None, :]
        rigid.setflags(write=False)
        object.__setattr__(self, "_alpha", alpha)
        object.__setattr__(self, "_rigid", rigid)

    @property
    def n(self) -> int:
        return self.beta.shape[0]

    @property
    def alpha(self) -> np.ndarray:
        """Productivity matrix ``beta + gamma``."""
        return self._alpha

    @property
    def rigid_pairs(self) -> np.ndarray:
        """Boolean matrix, True where at least one of the two agents is rigid."""
        return self._rigid

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.n_real == other.n_real
            and np.array_equal(self.beta, other.beta)
            and np.array_equal(self.gamma, other.gamma)
            and np.array_equal(self.rigid_p, other.rigid_p)
            and np.array_equal(self.rigid_q, other.rigid_q)
        )

    def __hash__(self):
        return hash((self.beta.tobytes(), self.gamma.tobytes(),
                     self.rigid_p.tobytes(), self.rigid_q.tobytes(), self.n_real))

    def __repr__(self):
        return (f"Instance(n={self.n}, rigid_p={self.rigid_p.astype(int).tolist()}, "
                f"rigid_q={self.rigid_q.astype(int).tolist()}, "
                f"beta={self.beta.tolist()}, gamma={self.gamma.tolist()})")


@dataclass(frozen=True)
class Outcome:
    """A matching together with payoff vectors ``u`` (P side) and ``v`` (Q side).

    Nothing about feasibility is implied; see :mod:`rifle.verify`.
    """

    matching: Matching
    u: tuple[int, ...]
    v: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "matching", as_matching(self.matching))
        object.__setattr__(self, "u", tuple(int(x) for x in self.u))
        object.__setattr__(self, "v", tuple(int(x) for x in self.v))
        n = len(self.matching)
        if len(self.u) != n or len(self.v) != n:
            raise ValueError(
                f"payoff vectors of length {len(self.u)}/{len(self.v)} do not fit a matching of size {n}")

    @property
    def n(self) -> int:
        return len(self.matching)


def as_matching(seq: Sequence[int]) -> Matching:
    """Validate ``seq`` as a bijection on ``range(len(seq))`` and return it as a tuple."""
    m = tuple(int(j) for j in seq)
    if sorted(m) != list(range(len(m))):
        raise ValueError(f"{list(m)} is not a perfect matching")
    return m


def _check_index(inst: Instance, i: int, j: int):
    if not (0 <= i < inst.n and 0 <= j < inst.n):
        raise IndexError(f"pair ({i}, {j}) out of range for n={inst.n}")


def pair_class(inst: Instance, i: int, j: int) -> PairClass:
    _check_index(inst, i, j)
    return PairClass.RIGID if inst.rigid_pairs[i, j] else PairClass.FLEXIBLE


def alpha(inst: Instance, i: int, j: int) -> int:
    _check_index(inst, i, j)
    return int(inst.alpha[i, j])


def total_productivity(inst: Instance, m: Sequence[int]) -> int:
    m = as_matching(m)
    if len(m) != inst.n:
        raise ValueError(f"matching of size {len(m)} for instance of size {inst.n}")
    return int(inst.alpha[np.arange(inst.n), list(m)].sum())


def make_instance(beta, gamma, rigid_p=None, rigid_q=None) -> Instance:
    """Convenience constructor; missing rigidity flags default to all flexible.

    A rectangular market is padded to a square one with rigid dummy agents
    whose pairs are all worth ``(0, 0)``.
    """
    beta = np.asarray(beta, dtype=np.int64)
    gamma = np.asarray(gamma, dtype=np.int64)
    if beta.ndim != 2 or beta.shape != gamma.shape:
        raise ValueError(f"beta {beta.shape} and gamma {gamma.shape} must be matrices of one shape")
    m, k = beta.shape
    rigid_p = np.zeros(m, bool) if rigid_p is None else np.asarray(rigid_p, bool)
    rigid_q = np.zeros(k, bool) if rigid_q is None else np.asarray(rigid_q, bool)
    if rigid_p.shape != (m,) or rigid_q.shape != (k,):
        raise ValueError(f"need {m} P-flags and {k} Q-flags")
    n = max(m, k)
    if m != k:
        beta = np.pad(beta, ((0, n - m), (0, n - k)))
        gamma = np.pad(gamma, ((0, n - m), (0, n - k)))
        rigid_p = np.concatenate([rigid_p, np.ones(n - m, bool)])
        rigid_q = np.concatenate([rigid_q, np.ones(n - k, bool)])
    return Instance(beta, gamma, rigid_p, rigid_q)


def from_table(rows, rigid_p, rigid_q) -> Instance:
    """Build an instance from a table whose cells are ``(beta, gamma)`` pairs or single numbers.

    A single number is a productivity for a flexible pair and is stored as
    ``(value, 0)``; only the sum is ever read for flexible pairs.
    """
    n = len(rows)
    beta = np.zeros((n, n), dtype=np.int64)
    gamma = np.zeros((n, n), dtype=np.int64)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValueError(f"row {i} has {len(row)} cells, expected {n}")
        for j, cell in enumerate(row):
            if isinstance(cell, (tuple, list)):
                beta[i, j], gamma[i, j] = cell
            else:
                beta[i, j] = cell
    inst = Instance(beta, gamma, rigid_p, rigid_q)
    for i, row in enumerate(rows):
        for j, cell in enumerate(row):
            if not isinstance(cell, (tuple, list)) and inst.rigid_pairs[i, j]:
                raise ValueError(f"rigid pair ({i}, {j}) needs an explicit (beta, gamma) split")
    return inst


def from_marriage(prefs_p: Sequence[Sequence[int]], prefs_q: Sequence[Sequence[int]]) -> Instance:
    """Encode strict preference lists as an all-rigid instance.

    ``prefs_p[i]`` lists Q-indices from most to least preferred; unlisted
    partners are unacceptable and get share 0. The k-th listed partner
    (k = 1, 2, ...) is worth ``n + 1 - k``.
    """
    n = len(prefs_p)
    if len(prefs_q) != n:
        raise ValueError(f"{n} P-lists but {len(prefs_q)} Q-lists")
    beta = np.zeros((n, n), dtype=np.int64)
    gamma = np.zeros((n, n), dtype=np.int64)
    for i, lst in enumerate(prefs_p):
        if len(set(lst)) != len(lst):
            raise ValueError(f"duplicate entry in preference list of p{i}")
        for rank, j in enumerate(lst, start=1):
            beta[i, j] = n + 1 - rank
    for j, lst in enumerate(prefs_q):
        if len(set(lst)) != len(lst):
            raise ValueError(f"duplicate entry in preference list of q{j}")
        for rank, i in enumerate(lst, start=1):
            gamma[i, j] = n + 1 - rank
    return Instance(beta, gamma, [True] * n, [True] * n)


def from_assignment(a) -> Instance:
    """All-flexible instance with productivity matrix ``a`` (stored as ``beta``)."""
    a = np.asarray(a)
    if a.size and a.min() < 0:
        raise ValueError("productivities must be nonnegative")
    return make_instance(a, np.zeros_like(a))


def add_reservation_prices(inst: Instance, u_r: Sequence[int], v_r: Sequence[int],
                           dummy_share: int = 1) -> Instance:
    """Pad ``inst`` to size 2n with one rigid dummy partner per agent.

    Dummy Q-agent ``n + i`` belongs to P-agent ``i``: their pair is
    ``(u_r[i], dummy_share)``. Dummy P-agent ``n + j`` belongs to Q-agent ``j``:
    their pair is ``(dummy_share, v_r[j])``. Every other pair involving a dummy
    is ``(0, 0)``. A positive ``dummy_share`` makes each dummy strictly prefer
    its own agent, so a real agent left below its reservation price always
    blocks together with its dummy. ``dummy_share=0`` gives the bare
    construction where the dummy is indifferent.
    """
    n = inst.n
    u_r = np.asarray(u_r, dtype=np.int64)
    v_r = np.asarray(v_r, dtype=np.int64)
    if u_r.shape != (n,) or v_r.shape != (n,):
        raise ValueError(f"reservation vectors must have length {n}")
    if u_r.min() < 0 or v_r.min() < 0 or dummy_share < 0:
        raise ValueError("reservation prices must be nonnegative")
    beta = np.zeros((2 * n, 2 * n), dtype=np.int64)
    gamma = np.zeros((2 * n, 2 * n), dtype=np.int64)
    beta[:n, :n] = inst.beta
    gamma[:n, :n] = inst.gamma
    idx = np.arange(n)
    beta[idx, n + idx] = u_r
    gamma[idx, n + idx] = dummy_share
    beta[n + idx, idx] = dummy_share
    gamma[n + idx, idx] = v_r
    rigid_p = np.concatenate([inst.rigid_p, np.ones(n, dtype=bool)])
    rigid_q = np.concatenate([inst.rigid_q, np.ones(n, dtype=bool)])
    return Instance(beta, gamma, rigid_p, rigid_q, n_real=n)


def reservation_prices(inst: Instance) -> tuple[np.ndarray, np.ndarray]:
    """Recover ``(u_r, v_r)`` from an instance built by :func:`add_reservation_prices`."""
    if inst.n_real is None:
        raise ValueError("instance has no reservation dummies")
    k = inst.n_real
    idx = np.arange(k)
    return inst.beta[idx, k + idx].copy(), inst.gamma[k + idx, idx].copy()
