"""Dimension of the set where the alpha-Hoelder derivative of the staircase
neither exists nor is infinite, plus finite-depth block diagnostics.

The dimension ``s`` is the root of ``beta_alpha(s) + s * min_i r_i = 0``
where ``r_i = phi(i*)/psi(i*)`` is read off at the fixed points of the two
extreme maps. Equivalently ``s = max(s_0, s_1)`` with ``s_i`` the root of
``beta_alpha(s) + s * r_i = 0``; both routes are computed and compared.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, NumericalError
from .gibbs import distribution_value
from .ifs import CodedPoint, IfsSpec, cylinder, decode, fixed_point, log_derivative
from .roots import XTOL, bisect
from .thermo import (FD_STEP, BetaFunction, LinearPotential, PotentialSpec, chi_potential,
                     phi_potential, pressure_value, require_admissible, solve_delta)

CONSISTENCY_TOL = 1e-6
SCORE_CEILING = math.log(10.0)
MIN_CHAIN = 3


@dataclass(frozen=True)
class FixedPointData:
    symbol: int
    fp: float
    phi_val: float
    psi_val: float
    ratio: float
    chi_val: float


@dataclass(frozen=True)
class LambdaReport:
    s: float
    s_per_letter: tuple[float, float]
    min_ratio: float
    delta: float
    dim_nu: float
    ordering_note: str
    alpha: float = math.nan

    def as_record(self) -> dict:
        return {
            "delta": self.delta,
            "dim_nu": self.dim_nu,
            "s": self.s,
            "s_0": self.s_per_letter[0],
            "s_1": self.s_per_letter[1],
            "min_ratio": self.min_ratio,
            "ordering_note": self.ordering_note,
        }


@dataclass(frozen=True)
class BlockEvent:
    symbol: int
    level: int
    length: int
    birkhoff_chi: float
    score: float


@dataclass(frozen=True)
class BlockScan:
    """Complete blocks plus runs of 0 or 1 cut off by either end of the word."""

    events: tuple[BlockEvent, ...]
    open_runs: tuple[tuple[int, int, int], ...] = ()  # (symbol, start, length), 1-based

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def __getitem__(self, i):
        return self.events[i]


@dataclass(frozen=True)
class ScoreSeries:
    events: tuple[BlockEvent, ...]
    oscillation_candidate: bool
    chain: tuple[BlockEvent, ...] = field(default=())
    ceiling: float = SCORE_CEILING


@dataclass(frozen=True)
class Quotient:
    lower: float
    upper: float

    @property
    def mid(self) -> float:
        return 0.5 * (self.lower + self.upper)

    @property
    def half_width(self) -> float:
        return 0.5 * (self.upper - self.lower)


def fixed_point_data(spec: IfsSpec, psi, alpha: float, symbol: int,
                     depth: int | None = None) -> FixedPointData:
    if symbol not in (0, 1):
        raise InputError(f"fixed-point data is defined for the extreme letters 0 and 1, got {symbol}")
    g = require_admissible(spec, psi, alpha, depth)
    return _fixed_point_data(spec, g, alpha, symbol)


def _fixed_point_data(spec, g: LinearPotential, alpha, symbol) -> FixedPointData:
    fp = fixed_point(spec, symbol)
    phi_val = float(np.log(spec.maps[symbol].derivative(fp)))
    psi_val = float(g(spec, symbol, fp))
    return FixedPointData(symbol, fp, phi_val, psi_val, phi_val / psi_val,
                          psi_val - alpha * phi_val)


def _ordering(dim_nu: float, s: float, tol: float) -> str:
    if dim_nu > s + tol:
        return "dim_nu > s"
    if dim_nu < s - tol:
        return "dim_nu < s"
    return "dim_nu = s"


def lambda_dimension(spec: IfsSpec, psi, alpha: float, depth: int | None = None, *,
                     xtol: float = XTOL, consistency_tol: float = CONSISTENCY_TOL,
                     h: float = FD_STEP, richardson: bool = False) -> LambdaReport:
    bf = BetaFunction(spec, psi, alpha, depth, xtol=xtol)
    data = [_fixed_point_data(spec, bf.psi, alpha, i) for i in (0, 1)]
    ratios = [d.ratio for d in data]
    min_ratio = min(ratios)
    delta = solve_delta(spec, bf.depth, xtol)

    def root(r: float, what: str) -> float:
        # g(0) = beta(0) < 0 and g(delta) = delta * r > 0
        return bisect(lambda s: bf(s) + s * r, 0.0, delta, xtol=xtol, what=what).x

    s = root(min_ratio, "lambda_dimension")
    s0, s1 = root(ratios[0], "s_0"), root(ratios[1], "s_1")
    if abs(s - max(s0, s1)) > consistency_tol:
        raise NumericalError(
            f"min-ratio root {s!r} disagrees with max(s_0, s_1) = {max(s0, s1)!r}"
        )
    slope = bf.derivative(alpha, h, richardson)
    if slope < 1e-12:
        raise NumericalError(f"degenerate tangent: beta'(alpha) = {slope!r}")
    dim_nu = alpha - 1.0 / slope
    return LambdaReport(s, (s0, s1), min_ratio, delta, dim_nu,
                        _ordering(dim_nu, s, 10 * xtol), float(alpha))


def darst_consistency(spec: IfsSpec, depth: int | None = None, points: int = 20,
                      xtol: float = XTOL) -> float:
    """Largest gap between the implicit beta_1 and ``P(s phi)/P(phi)`` on ``[0, delta]``."""
    if not spec.is_affine:
        raise InputError("the Darst identity needs an affine system")
    bf = BetaFunction(spec, PotentialSpec.darst(), 1.0, depth, xtol=xtol)
    phi = phi_potential(spec)
    p_phi = pressure_value(spec, phi, bf.depth)
    delta = solve_delta(spec, bf.depth, xtol)
    grid = np.linspace(0.0, delta, points)
    return max(abs(bf(s) - pressure_value(spec, phi.scale(s), bf.depth) / p_phi)
               for s in grid)


# -- blocks ------------------------------------------------------------------

def _runs(symbols):
    """Maximal runs as (symbol, start, length) with 1-based start."""
    out = []
    i = 0
    while i < len(symbols):
        j = i
        while j < len(symbols) and symbols[j] == symbols[i]:
            j += 1
        out.append((symbols[i], i + 1, j - i))
        i = j
    return out


def _chi_sum(spec, chi: LinearPotential, point: CodedPoint, n: int) -> float:
    """``S_n chi`` at ``point`` via the chain rule."""
    word = point.symbols(n)
    y = decode(spec, point.shift(n))
    return float(chi.phi_coef * log_derivative(spec, word, y)
                 + sum(chi.values[s] for s in word) + n * chi.const)


def _scan(spec, g, alpha, symbols, point) -> BlockScan:
    chi = chi_potential(spec, g, alpha)
    psi_fixed = {i: _fixed_point_data(spec, g, alpha, i).psi_val for i in (0, 1)}
    events, open_runs = [], []
    for sym, start, length in _runs(symbols):
        if sym not in (0, 1):
            continue
        if start == 1 or start + length - 1 == len(symbols):
            open_runs.append((sym, start, length))
            continue
        n = start - 1
        s_chi = _chi_sum(spec, chi, point, n)
        events.append(BlockEvent(sym, n, length, s_chi, s_chi + length * psi_fixed[sym]))
    return BlockScan(tuple(events), tuple(open_runs))


def detect_blocks(word, spec: IfsSpec, psi, alpha: float,
                  depth: int | None = None) -> BlockScan:
    """i-blocks (i in {0, 1}) of ``word`` with both flanks inside the word.

    Birkhoff sums are taken at the point coding the periodic repetition of
    ``word``.
    """
    symbols = tuple(int(s) for s in word)
    if len(symbols) < 3:
        raise InputError("block detection needs a word of length >= 3")
    g = require_admissible(spec, psi, alpha, depth)
    return _scan(spec, g, alpha, symbols, CodedPoint.periodic(symbols))


def _longest_increasing_chain(events):
    """Longest subsequence with strictly increasing level and length."""
    tails: list[int] = []
    tail_idx: list[int] = []
    parent = [-1] * len(events)
    for idx, ev in enumerate(events):
        # levels already increase along the scan; chain on length only
        pos = bisect_left(tails, ev.length)
        if pos == len(tails):
            tails.append(ev.length)
            tail_idx.append(idx)
        else:
            tails[pos] = ev.length
            tail_idx[pos] = idx
        parent[idx] = tail_idx[pos - 1] if pos > 0 else -1
    chain = []
    k = tail_idx[-1] if tail_idx else -1
    while k >= 0:
        chain.append(events[k])
        k = parent[k]
    return tuple(reversed(chain))


def oscillation_score_series(spec: IfsSpec, psi, alpha: float, point: CodedPoint,
                             depth: int, *, ceiling: float = SCORE_CEILING,
                             min_chain: int = MIN_CHAIN,
                             pressure_depth: int | None = None) -> ScoreSeries:
    """Block scores of the first ``depth`` letters of ``point``.

    ``oscillation_candidate`` is a heuristic: it is set when, for one extreme
    letter, at least ``min_chain`` blocks with strictly increasing level and
    length all score at or below ``ceiling``. The underlying property is
    asymptotic and cannot be decided from a finite prefix.
    """
    if point.eventually_constant:
        raise InputError("point is an endpoint (code eventually constant 0 or 1)")
    g = require_admissible(spec, psi, alpha, pressure_depth)
    scan = _scan(spec, g, alpha, point.symbols(depth), point)
    best: tuple[BlockEvent, ...] = ()
    for i in (0, 1):
        low = [e for e in scan.events if e.symbol == i and e.score <= ceiling]
        chain = _longest_increasing_chain(low)
        if len(chain) > len(best):
            best = chain
    return ScoreSeries(scan.events, len(best) >= min_chain, best, ceiling)


def block_point(spec: IfsSpec, psi, alpha: float, growth=(2, 4, 8, 16),
                depth: int | None = None) -> CodedPoint:
    """A point carrying 0-blocks of controlled length at controlled levels.

    Stage k appends filler ``1, 0, 1, ..., 1`` until ``S chi`` has grown by
    ``growth[k]`` since the previous stage, sets ``N_k = floor(S chi)`` and
    appends ``floor(-N_k / psi(0*))`` zeros. The tail alternates ``1, 0``.
    """
    g = require_admissible(spec, psi, alpha, depth)
    chi = chi_potential(spec, g, alpha)
    psi0 = _fixed_point_data(spec, g, alpha, 0).psi_val
    x0 = fixed_point(spec, 0)
    word: list[int] = []

    def s_chi():
        if not word:
            return 0.0
        return float(chi.phi_coef * log_derivative(spec, word, x0)
                     + sum(chi.values[s] for s in word) + len(word) * chi.const)

    for n_k in growth:
        base = s_chi()
        word.append(1)
        while s_chi() - base < n_k:
            word.extend((0, 1))
        big_n = math.floor(s_chi())
        word.extend([0] * math.floor(-big_n / psi0))
    return CodedPoint.periodic((1, 0), prefix=word)


# -- Hoelder quotients --------------------------------------------------------

def empirical_quotient(spec: IfsSpec, psi, alpha: float, x: float, eta: float,
                       level: int, depth: int | None = None) -> Quotient:
    """Bounds on ``|F(x) - F(eta)| / |x - eta|**alpha`` from level cylinders."""
    if x == eta:
        raise InputError("x and eta must differ")
    lo, hi = sorted((x, eta))
    f_lo = distribution_value(spec, psi, lo, level, depth)
    f_hi = distribution_value(spec, psi, hi, level, depth)
    scale = (hi - lo) ** alpha
    d_min = max(0.0, f_hi.lower - f_lo.upper)
    d_max = f_hi.upper - f_lo.lower
    return Quotient(d_min / scale, d_max / scale)


def right_endpoint_quotients(spec: IfsSpec, psi, alpha: float, point: CodedPoint,
                             depth: int, level: int) -> list[tuple[int, Quotient]]:
    """Quotients against the right endpoints of ``[x_1 .. x_n]`` for every n
    with ``x_{n+1} != 1``."""
    xi = decode(spec, point)
    symbols = point.symbols(depth + 1)
    out = []
    for n in range(1, depth + 1):
        if symbols[n] == 1:
            continue
        eta = cylinder(spec, symbols[:n]).interval[1]
        out.append((n, empirical_quotient(spec, psi, alpha, xi, eta, level)))
    return out
