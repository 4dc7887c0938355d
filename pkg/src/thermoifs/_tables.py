"""Level-by-level enumeration of cylinder geometry.

For every word of length n (index order: first symbol most significant) a
table stores the cylinder endpoints, ``log f_w'`` at both domain endpoints
and the per-symbol letter counts. Any Birkhoff sum of a potential of the
form ``a*phi + v[x_1] + c`` over a cylinder is a linear function of these
columns, so solvers never revisit the maps once a table is built.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import ResourceError, InputError
from .ifs import IfsSpec

DEFAULT_BUDGET = 2 ** 24
BUDGET_ENV = "THERMOIFS_ENUM_BUDGET"

_configured_budget: int | None = None


def enumeration_budget() -> int:
    """Cylinder-count limit: the environment override, else the configured value."""
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET if _configured_budget is None else _configured_budget
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None


@contextmanager
def configured_budget(budget: int):
    """Use ``budget`` as the default for the duration of the block."""
    global _configured_budget
    previous, _configured_budget = _configured_budget, int(budget)
    try:
        yield
    finally:
        _configured_budget = previous


def default_depth(spec: IfsSpec) -> int:
    """Deepest level with at most 2**16 cylinders."""
    d, n = spec.alphabet_size, 1
    while d ** (n + 1) <= 2 ** 16:
        n += 1
    return n


def check_budget(spec: IfsSpec, depth: int, budget: int | None = None) -> None:
    if depth < 1:
        raise InputError("depth must be >= 1")
    budget = enumeration_budget() if budget is None else budget
    count = spec.alphabet_size ** depth
    if count > budget:
        raise ResourceError(
            f"depth {depth} needs {count} cylinders, over the enumeration "
            f"budget of {budget} (set {BUDGET_ENV} to raise it)"
        )


@dataclass(frozen=True, eq=False)
class LevelTable:
    level: int
    left: np.ndarray      # f_w(x_lo)
    right: np.ndarray     # f_w(x_hi)
    logd_lo: np.ndarray   # log f_w'(x_lo)
    logd_hi: np.ndarray   # log f_w'(x_hi)
    counts: np.ndarray    # (N, |A|) letter counts

    def __len__(self) -> int:
        return self.left.shape[0]

    def words(self) -> np.ndarray:
        """(N, level) array of the words in table order."""
        d = self.counts.shape[1]
        idx = np.arange(len(self))
        out = np.empty((len(self), self.level), dtype=np.int64)
        for k in range(self.level - 1, -1, -1):
            out[:, k] = idx % d
            idx //= d
        return out


def iter_levels(spec: IfsSpec, depth: int, budget: int | None = None) -> Iterator[LevelTable]:
    check_budget(spec, depth, budget)
    lo, hi = spec.domain
    d = spec.alphabet_size
    left = np.array([lo])
    right = np.array([hi])
    logd_lo = np.zeros(1)
    logd_hi = np.zeros(1)
    counts = np.zeros((1, d), dtype=np.int32)
    for n in range(1, depth + 1):
        parts = []
        for a, m in enumerate(spec.maps):
            c = counts.copy()
            c[:, a] += 1
            parts.append((m(left), m(right),
                          logd_lo + np.log(m.derivative(left)),
                          logd_hi + np.log(m.derivative(right)), c))
        left, right, logd_lo, logd_hi, counts = (
            np.concatenate(cols) for cols in zip(*parts)
        )
        yield LevelTable(n, left, right, logd_lo, logd_hi, counts)


def level_table(spec: IfsSpec, depth: int, budget: int | None = None) -> LevelTable:
    check_budget(spec, depth, budget)
    return _level_table(spec, depth)


@lru_cache(maxsize=16)
def _level_table(spec: IfsSpec, depth: int) -> LevelTable:
    table = None
    for table in iter_levels(spec, depth, budget=spec.alphabet_size ** depth):
        pass
    return table
