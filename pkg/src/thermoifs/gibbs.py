"""Gibbs cylinder weights and the distribution function (devil's staircase).

Two representations of the measure are used:

``exact-bernoulli``
    Affine systems with a potential constant on first-level cylinders.
    The Gibbs measure is then the Bernoulli measure with letter
    probabilities ``exp(psi)`` and every weight is an exact product.
``level-normalized``
    Everything else. Weights at level n are ``exp(S_n psi)`` at the
    cylinder anchor, renormalised to sum to one; they are comparable to
    the true Gibbs weights up to the reported constant ``K``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from ._tables import check_budget, level_table
from .errors import InputError
from .ifs import IfsSpec, check_word, cylinder
from .thermo import LinearPotential, admissibility_check, resolve, _depth

EXACT = "exact-bernoulli"
NORMALIZED = "level-normalized"


@dataclass(frozen=True, eq=False)
class GibbsWeights:
    mode: str
    level: int
    weights: np.ndarray     # table order (first letter most significant)
    comparability: float    # K; 1.0 in exact mode
    alphabet_size: int

    def __getitem__(self, word) -> float:
        if len(word) != self.level:
            raise InputError(f"word length {len(word)} != table level {self.level}")
        idx = 0
        for s in word:
            idx = idx * self.alphabet_size + int(s)
        return float(self.weights[idx])

    def total(self) -> float:
        return math.fsum(self.weights)


@dataclass(frozen=True)
class FBounds:
    lower: float
    upper: float

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def mid(self) -> float:
        return 0.5 * (self.lower + self.upper)


@dataclass(frozen=True)
class StaircaseSample:
    x: tuple[float, ...]
    f_lower: tuple[float, ...]
    f_upper: tuple[float, ...]
    level: int

    def __len__(self) -> int:
        return len(self.x)

    def rows(self):
        return zip(self.x, self.f_lower, self.f_upper)


@lru_cache(maxsize=64)
def _gibbs_potential(spec: IfsSpec, psi, depth: int | None) -> LinearPotential:
    if isinstance(psi, LinearPotential):
        g = psi
    else:
        g = resolve(spec, psi, _depth(spec, depth))
    report = admissibility_check(spec, g, None, depth)
    if not report.passed:
        raise InputError("psi does not define a Gibbs measure: "
                         + "; ".join(report.violations))
    return g


def letter_probabilities(spec: IfsSpec, g: LinearPotential):
    """Bernoulli probabilities when the exact mode applies, else ``None``.

    Probabilities are renormalised so the level sums are one to rounding;
    this absorbs the residual of ``P(psi) = 0``.
    """
    if not spec.is_affine:
        return None
    p = [math.exp(g.phi_coef * math.log(r) + v + g.const)
         for r, v in zip(spec.ratios(), g.values)]
    total = math.fsum(p)
    return [x / total for x in p]


@lru_cache(maxsize=32)
def _weights(spec: IfsSpec, psi, level: int, depth: int | None) -> GibbsWeights:
    g = _gibbs_potential(spec, psi, depth)
    table = level_table(spec, level)
    probs = letter_probabilities(spec, g)
    if probs is not None:
        w = np.exp(table.counts @ np.log(probs))
        return GibbsWeights(EXACT, level, w, 1.0, spec.alphabet_size)
    logw = (g.phi_coef * table.logd_lo + table.counts @ np.asarray(g.values)
            + level * g.const)
    log_z = kernels.logsumexp(np.ascontiguousarray(logw))
    spread = float(np.max(np.abs(g.phi_coef * (table.logd_hi - table.logd_lo))))
    k = math.exp(abs(log_z) + spread)
    return GibbsWeights(NORMALIZED, level, np.exp(logw - log_z), k, spec.alphabet_size)


def gibbs_weights(spec: IfsSpec, psi, level: int, depth: int | None = None,
                  budget: int | None = None) -> GibbsWeights:
    check_budget(spec, level, budget)
    return _weights(spec, psi, level, depth)


def cylinder_weight(spec: IfsSpec, psi, word, depth: int | None = None) -> float:
    symbols = check_word(spec, word)
    g = _gibbs_potential(spec, psi, depth)
    probs = letter_probabilities(spec, g)
    if probs is not None:
        return math.prod(probs[s] for s in symbols)
    if not symbols:
        return 1.0
    return gibbs_weights(spec, psi, len(symbols), depth)[symbols]


def _endpoint_bounds(x, interval, acc, mass) -> FBounds:
    if x == interval[0]:
        return FBounds(acc, acc)
    if x == interval[1]:
        return FBounds(acc + mass, acc + mass)
    return FBounds(acc, acc + mass)


def distribution_value(spec: IfsSpec, psi, x: float, level: int,
                       depth: int | None = None) -> FBounds:
    """Bounds on ``F(x) = nu((-inf, x])`` from the level-``level`` cylinders.

    The width is the mass of the level cylinder containing ``x``; it is zero
    when ``x`` sits in a gap or on a cylinder endpoint.
    """
    if level < 1:
        raise InputError("level must be >= 1")
    lo, hi = spec.domain
    if x <= lo:
        return FBounds(0.0, 0.0)
    if x >= hi:
        return FBounds(1.0, 1.0)
    g = _gibbs_potential(spec, psi, depth)
    probs = letter_probabilities(spec, g)
    if probs is None:
        return _distribution_from_table(spec, psi, x, level, depth)
    order = spec.image_order()
    prefix: list[int] = []
    acc, mass = 0.0, 1.0
    interval = spec.domain
    for _ in range(level):
        below = 0.0
        for a in order:
            c = cylinder(spec, prefix + [a])
            if x < c.interval[0]:
                return FBounds(acc + mass * below, acc + mass * below)
            if x <= c.interval[1]:
                acc += mass * below
                mass *= probs[a]
                prefix.append(a)
                interval = c.interval
                break
            below += probs[a]
        else:
            return FBounds(acc + mass, acc + mass)
    return _endpoint_bounds(x, interval, acc, mass)


def _sorted_level(spec, psi, level, depth):
    table = level_table(spec, level)
    w = gibbs_weights(spec, psi, level, depth).weights
    order = np.argsort(table.left, kind="stable")
    left, right, w = table.left[order], table.right[order], w[order]
    cum = np.concatenate([[0.0], np.cumsum(w)])
    cum /= cum[-1]
    return left, right, cum


def _distribution_from_table(spec, psi, x, level, depth) -> FBounds:
    left, right, cum = _sorted_level(spec, psi, level, depth)
    i = int(np.searchsorted(left, x, side="right")) - 1
    if i < 0:
        return FBounds(0.0, 0.0)
    if x > right[i]:
        return FBounds(float(cum[i + 1]), float(cum[i + 1]))
    return _endpoint_bounds(x, (left[i], right[i]), float(cum[i]),
                            float(cum[i + 1] - cum[i]))


def staircase_sample(spec: IfsSpec, psi, level: int, depth: int | None = None,
                     budget: int | None = None) -> StaircaseSample:
    """Staircase values at both endpoints of every level cylinder, left to right.

    ``F`` is known exactly at cylinder endpoints (the measure has no atoms),
    so the two bound columns coincide there.
    """
    check_budget(spec, level, budget)
    left, right, cum = _sorted_level(spec, psi, level, depth)
    xs = np.empty(2 * len(left))
    fs = np.empty(2 * len(left))
    xs[0::2], xs[1::2] = left, right
    fs[0::2], fs[1::2] = cum[:-1], cum[1:]
    fs = np.clip(fs, 0.0, 1.0)
    return StaircaseSample(tuple(xs.tolist()), tuple(fs.tolist()), tuple(fs.tolist()), level)


def write_staircase_csv(sample: StaircaseSample, stream) -> None:
    import csv

    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["x", "F_lower", "F_upper"])
    for x, lo, hi in sample.rows():
        writer.writerow([repr(x), repr(lo), repr(hi)])


def clear_caches() -> None:
    """Drop every memoised table, potential and root (for cold timings)."""
    from . import _tables, thermo

    for fn in (_tables._level_table, thermo._letter_sums, thermo.resolve, thermo.solve_delta,
               _gibbs_potential, _weights):
        fn.cache_clear()
