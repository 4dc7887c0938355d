"""Pressure, the limit-set dimension and the implicit beta function.

Every potential handled here reduces to the normal form

    g(xi) = a * phi(xi) + v[x_1] + c,

where ``phi(xi) = log f_{x_1}'(sigma xi)`` is the geometric potential, ``v``
holds one constant per first letter and ``c`` is a constant. Birkhoff sums
of such a potential over a cylinder are linear in the columns of a
:class:`~thermoifs._tables.LevelTable`, so a pressure evaluation is one
log-sum-exp reduction over the table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import kernels
from ._tables import default_depth, iter_levels, level_table
from .errors import InputError, NumericalError
from .ifs import IfsSpec, check_word, log_derivative
from .roots import MAXITER, XTOL, bisect, expand_bracket

FD_STEP = 1e-4
ADMISSIBILITY_TOL = 1e-8
CHI_MARGIN = 1e-9
GRID_LEVEL = 10


@dataclass(frozen=True)
class PotentialSpec:
    """Description of a potential.

    Forms
    -----
    ``geometric``            phi
    ``scaled-geometric``     t * phi                      (params: t)
    ``delta-geometric``      delta * phi, delta = dim of the limit set
    ``darst-shift``          phi - P(phi)
    ``symbolic``             v[x_1]                       (params: v)
    ``linear-combination``   coeff_phi * phi + coeff_psi_base * base
    """

    form: str
    params: tuple[float, ...] = ()
    base: "PotentialSpec | None" = None

    _ARITY = {"geometric": 0, "scaled-geometric": 1, "delta-geometric": 0,
              "darst-shift": 0, "linear-combination": 2}

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        if self.form == "symbolic":
            if not self.params:
                raise InputError("symbolic potential needs one value per letter")
        elif self.form not in self._ARITY:
            raise InputError(f"unknown potential form {self.form!r}")
        elif len(self.params) != self._ARITY[self.form]:
            raise InputError(f"{self.form} takes {self._ARITY[self.form]} parameters")
        if (self.form == "linear-combination") != (self.base is not None):
            raise InputError("only linear-combination takes a base potential")

    @classmethod
    def geometric(cls):
        return cls("geometric")

    @classmethod
    def scaled(cls, t: float):
        return cls("scaled-geometric", (t,))

    @classmethod
    def delta_geometric(cls):
        return cls("delta-geometric")

    @classmethod
    def darst(cls):
        return cls("darst-shift")

    @classmethod
    def symbolic(cls, values: Sequence[float]):
        return cls("symbolic", tuple(values))

    @classmethod
    def bernoulli(cls, probabilities: Sequence[float]):
        if any(p <= 0 for p in probabilities):
            raise InputError("probabilities must be positive")
        return cls("symbolic", tuple(math.log(p) for p in probabilities))

    @classmethod
    def combination(cls, coeff_phi: float, coeff_psi_base: float, base: "PotentialSpec"):
        return cls("linear-combination", (coeff_phi, coeff_psi_base), base)


@dataclass(frozen=True)
class LinearPotential:
    """``phi_coef * phi + values[x_1] + const``."""

    phi_coef: float
    values: tuple[float, ...]
    const: float = 0.0

    def __add__(self, other: "LinearPotential") -> "LinearPotential":
        return LinearPotential(
            self.phi_coef + other.phi_coef,
            tuple(a + b for a, b in zip(self.values, other.values)),
            self.const + other.const,
        )

    def scale(self, k: float) -> "LinearPotential":
        return LinearPotential(k * self.phi_coef, tuple(k * v for v in self.values),
                               k * self.const)

    def __call__(self, spec: IfsSpec, symbol: int, y):
        """Value at a point with first letter ``symbol`` whose shift sits at ``y``."""
        return (self.phi_coef * np.log(spec.maps[symbol].derivative(y))
                + self.values[symbol] + self.const)


def phi_potential(spec: IfsSpec) -> LinearPotential:
    return LinearPotential(1.0, (0.0,) * spec.alphabet_size)


@dataclass(frozen=True)
class PressureEstimate:
    value: float
    per_level: tuple[tuple[int, float], ...]
    error_indicator: float
    depth: int


@dataclass(frozen=True)
class BetaPoint:
    t: float
    beta: float
    alpha: float
    residual: float


@dataclass(frozen=True)
class DimensionReport:
    delta: float
    dim_nu: float
    alpha: float
    beta_anchor_zero: float
    beta_anchor_one: float


@dataclass(frozen=True)
class AdmissibilityReport:
    passed: bool
    pressure: float
    psi_max: float
    chi_min: float
    violations: tuple[str, ...] = field(default=())


def _depth(spec: IfsSpec, depth: int | None) -> int:
    return default_depth(spec) if depth is None else int(depth)


# -- pressure evaluation -----------------------------------------------------

@lru_cache(maxsize=64)
def _letter_sums(spec: IfsSpec, depth: int, values: tuple[float, ...]) -> np.ndarray:
    table = level_table(spec, depth)
    return np.ascontiguousarray(table.counts @ np.asarray(values, dtype=float))


def _pressure_at(spec: IfsSpec, depth: int, phi_coef: float, scale: float,
                 values: tuple[float, ...], const: float) -> float:
    """P_depth of ``phi_coef*phi + scale*values[x_1] + const``."""
    table = level_table(spec, depth)
    if any(values) and scale != 0.0:
        sym = _letter_sums(spec, depth, values)
        total = kernels.lse_max2(phi_coef, table.logd_lo, table.logd_hi, scale, sym)
    else:
        total = kernels.lse_max2(phi_coef, table.logd_lo, table.logd_hi, 0.0, table.logd_lo)
    return total / depth + const


def pressure_value(spec: IfsSpec, g: LinearPotential, depth: int | None = None) -> float:
    depth = _depth(spec, depth)
    return _pressure_at(spec, depth, g.phi_coef, 1.0, g.values, g.const)


def _level_pressure(table, g: LinearPotential) -> float:
    sym = np.ascontiguousarray(table.counts @ np.asarray(g.values, dtype=float))
    total = kernels.lse_max2(g.phi_coef, table.logd_lo, table.logd_hi, 1.0, sym)
    return total / table.level + g.const


# -- potentials --------------------------------------------------------------

@lru_cache(maxsize=256)
def resolve(spec: IfsSpec, potential: PotentialSpec, depth: int | None = None) -> LinearPotential:
    """Reduce a :class:`PotentialSpec` to its normal form on ``spec``."""
    depth = _depth(spec, depth)
    d = spec.alphabet_size
    zero = (0.0,) * d
    form = potential.form
    if form == "geometric":
        return LinearPotential(1.0, zero)
    if form == "scaled-geometric":
        return LinearPotential(potential.params[0], zero)
    if form == "delta-geometric":
        return LinearPotential(solve_delta(spec, depth), zero)
    if form == "darst-shift":
        return LinearPotential(1.0, zero, -pressure_value(spec, phi_potential(spec), depth))
    if form == "symbolic":
        if len(potential.params) != d:
            raise InputError(
                f"symbolic potential has {len(potential.params)} values, alphabet has {d}"
            )
        return LinearPotential(0.0, potential.params)
    coeff_phi, coeff_base = potential.params
    base = resolve(spec, potential.base, depth)
    return LinearPotential(coeff_phi, zero) + base.scale(coeff_base)


def _as_linear(spec, potential, depth) -> LinearPotential:
    if isinstance(potential, LinearPotential):
        return potential
    return resolve(spec, potential, depth)


def birkhoff_sum(spec: IfsSpec, potential, word, x: float, depth: int | None = None) -> float:
    """``S_n g`` at the point coded by ``word`` followed by the code of ``x``.

    Uses the chain rule: the phi part is ``log f_word'(x)``.
    """
    symbols = check_word(spec, word)
    if not symbols:
        raise InputError("word must have length >= 1")
    lo, hi = spec.domain
    if not lo <= x <= hi:
        raise InputError(f"x={x} outside the domain {spec.domain}")
    g = _as_linear(spec, potential, depth)
    letters = sum(g.values[s] for s in symbols)
    return float(g.phi_coef * log_derivative(spec, symbols, x)
                 + letters + len(symbols) * g.const)


def pressure(spec: IfsSpec, potential, depth: int | None = None,
             budget: int | None = None) -> PressureEstimate:
    depth = _depth(spec, depth)
    g = _as_linear(spec, potential, depth)
    levels = tuple((t.level, _level_pressure(t, g)) for t in iter_levels(spec, depth, budget))
    err = abs(levels[-1][1] - levels[-2][1]) if depth > 1 else math.nan
    return PressureEstimate(levels[-1][1], levels, err, depth)


# -- root solvers ------------------------------------------------------------

@lru_cache(maxsize=64)
def solve_delta(spec: IfsSpec, depth: int | None = None, xtol: float = XTOL,
                maxiter: int = MAXITER) -> float:
    """Root of ``t -> P(t phi)``, the Hausdorff dimension of the limit set."""
    depth = _depth(spec, depth)
    zero = (0.0,) * spec.alphabet_size

    def f(t):
        return _pressure_at(spec, depth, t, 0.0, zero, 0.0)

    hi = 1.5
    while f(hi) >= 0:
        hi *= 2
        if hi > 1e6:
            raise NumericalError(f"solve_delta: P(t phi) >= 0 up to t={hi}")
    return bisect(f, 0.0, hi, xtol=xtol, maxiter=maxiter, what="solve_delta").x


def chi_potential(spec: IfsSpec, psi: LinearPotential, alpha: float) -> LinearPotential:
    return psi + phi_potential(spec).scale(-alpha)


def admissibility_check(spec: IfsSpec, psi, alpha: float | None, depth: int | None = None, *,
                        tol: float = ADMISSIBILITY_TOL,
                        margin: float = CHI_MARGIN) -> AdmissibilityReport:
    """Check ``psi < 0``, ``P(psi) = 0`` and ``psi - alpha*phi > 0`` numerically.

    Signs are sampled at every first letter with the shifted point running
    over cylinder endpoints of a fixed grid level. With ``alpha=None`` only
    the Gibbs conditions (``psi < 0``, ``P(psi) = 0``) are checked.
    """
    depth = _depth(spec, depth)
    g = _as_linear(spec, psi, depth)
    chi = chi_potential(spec, g, 0.0 if alpha is None else alpha)
    table = level_table(spec, min(depth, GRID_LEVEL))
    ys = np.concatenate([table.left, table.right])
    psi_max, chi_min = -math.inf, math.inf
    bad = []
    for a in range(spec.alphabet_size):
        pv = g(spec, a, ys)
        cv = chi(spec, a, ys)
        if pv.max() > psi_max:
            psi_max = float(pv.max())
            if psi_max >= 0:
                bad.append(f"psi >= 0 at letter {a}, y={float(ys[pv.argmax()])!r}")
        if alpha is not None and cv.min() < chi_min:
            chi_min = float(cv.min())
            if chi_min <= margin:
                bad.append(f"chi_alpha <= {margin} at letter {a}, y={float(ys[cv.argmin()])!r}")
    p = pressure_value(spec, g, depth)
    if abs(p) > tol:
        bad.append(f"|P(psi)| = {abs(p)!r} exceeds {tol}")
    if alpha is None:
        chi_min = math.nan
    return AdmissibilityReport(not bad, p, psi_max, chi_min, tuple(bad))


def require_admissible(spec, psi, alpha, depth=None, **kwargs) -> LinearPotential:
    report = admissibility_check(spec, psi, alpha, depth, **kwargs)
    if not report.passed:
        raise InputError("potential not admissible: " + "; ".join(report.violations))
    return _as_linear(spec, psi, _depth(spec, depth))


def _beta_equation(spec, depth, chi: LinearPotential, t: float):
    def f(b):
        return _pressure_at(spec, depth, t + b * chi.phi_coef, b, chi.values, b * chi.const)
    return f


def beta(spec: IfsSpec, psi, alpha: float, t: float, depth: int | None = None, *,
         xtol: float = XTOL, maxiter: int = MAXITER, check: bool = True) -> BetaPoint:
    """Solve ``P(t phi + beta chi_alpha) = 0`` for beta."""
    depth = _depth(spec, depth)
    g = (require_admissible(spec, psi, alpha, depth) if check
         else _as_linear(spec, psi, depth))
    return _beta(spec, depth, chi_potential(spec, g, alpha), alpha, t, xtol, maxiter)


def _beta(spec, depth, chi, alpha, t, xtol=XTOL, maxiter=MAXITER) -> BetaPoint:
    f = _beta_equation(spec, depth, chi, t)
    lo, hi, f_lo, f_hi = expand_bracket(f, what=f"beta(t={t!r})")
    root = bisect(f, lo, hi, xtol=xtol, maxiter=maxiter, what=f"beta(t={t!r})",
                  f_lo=f_lo, f_hi=f_hi)
    return BetaPoint(t, root.x, alpha, abs(f(root.x)))


class BetaFunction:
    """``t -> beta_alpha(t)`` for a fixed admissible configuration."""

    def __init__(self, spec: IfsSpec, psi, alpha: float, depth: int | None = None, *,
                 xtol: float = XTOL, maxiter: int = MAXITER, check: bool = True):
        self.spec = spec
        self.alpha = float(alpha)
        self.depth = _depth(spec, depth)
        self.psi = (require_admissible(spec, psi, alpha, self.depth) if check
                    else _as_linear(spec, psi, self.depth))
        self.chi = chi_potential(spec, self.psi, alpha)
        self.xtol = xtol
        self.maxiter = maxiter

    def point(self, t: float) -> BetaPoint:
        return _beta(self.spec, self.depth, self.chi, self.alpha, t, self.xtol, self.maxiter)

    def __call__(self, t: float) -> float:
        return self.point(t).beta

    def derivative(self, t: float, h: float = FD_STEP, richardson: bool = False) -> float:
        d = (self(t + h) - self(t - h)) / (2 * h)
        if richardson:
            d2 = (self(t + h / 2) - self(t - h / 2)) / h
            d = (4 * d2 - d) / 3
        return d


def dim_nu_tangent(spec: IfsSpec, psi, alpha: float, depth: int | None = None, *,
                   h: float = FD_STEP, richardson: bool = False,
                   xtol: float = XTOL) -> float:
    """x-intercept of the tangent to the beta graph at ``(alpha, 1)``."""
    bf = BetaFunction(spec, psi, alpha, depth, xtol=xtol)
    slope = bf.derivative(alpha, h, richardson)
    if slope < 1e-12:
        raise NumericalError(f"degenerate tangent: beta'(alpha) = {slope!r}")
    return alpha - 1.0 / slope


def dimension_report(spec: IfsSpec, psi, alpha: float, depth: int | None = None, *,
                     h: float = FD_STEP, richardson: bool = False,
                     xtol: float = XTOL) -> DimensionReport:
    bf = BetaFunction(spec, psi, alpha, depth, xtol=xtol)
    delta = solve_delta(spec, bf.depth, xtol)
    slope = bf.derivative(alpha, h, richardson)
    if slope < 1e-12:
        raise NumericalError(f"degenerate tangent: beta'(alpha) = {slope!r}")
    return DimensionReport(delta, alpha - 1.0 / slope, float(alpha), bf(delta), bf(alpha))
