"""Iterated function systems on an interval and their symbolic coding.

A system is a finite list of increasing contractions of a closed interval
``X = [x_lo, x_hi]`` whose images are pairwise disjoint. Map 0 has the
leftmost image and map 1 the rightmost; the remaining maps sit in between
in any order.

Words are applied right to left: for ``w = (w1, ..., wn)`` the composed map
is ``f_w = f_w1 o f_w2 o ... o f_wn``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import InputError

FIXED_POINT_TOL = 1e-14
FIXED_POINT_MAXITER = 10_000
DEFAULT_GRID = 1024


@dataclass(frozen=True)
class MapSpec:
    """One contraction of the system.

    ``kind`` is ``"affine"`` with ``params = (ratio, offset)`` giving
    ``f(x) = ratio*x + offset``, or ``"nonlinear"`` with ``params = (c, d, e)``
    giving ``f(x) = c*x + d + e*x*(1 - x)``.
    """

    kind: str
    params: tuple[float, ...]

    def __post_init__(self):
        expected = {"affine": 2, "nonlinear": 3}
        if self.kind not in expected:
            raise InputError(f"unknown map kind {self.kind!r}")
        if len(self.params) != expected[self.kind]:
            raise InputError(
                f"{self.kind} map needs {expected[self.kind]} parameters, "
                f"got {len(self.params)}"
            )
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))

    @classmethod
    def affine(cls, ratio: float, offset: float) -> "MapSpec":
        return cls("affine", (ratio, offset))

    @classmethod
    def nonlinear(cls, c: float, d: float, e: float) -> "MapSpec":
        return cls("nonlinear", (c, d, e))

    @property
    def is_affine(self) -> bool:
        return self.kind == "affine"

    def __call__(self, x):
        if self.kind == "affine":
            ratio, offset = self.params
            return ratio * x + offset
        c, d, e = self.params
        return c * x + d + e * x * (1.0 - x)

    def derivative(self, x):
        if self.kind == "affine":
            return self.params[0] + 0.0 * x
        c, _, e = self.params
        return c + e * (1.0 - 2.0 * x)

    def second_derivative_bound(self) -> float:
        if self.kind == "affine":
            return 0.0
        return 2.0 * abs(self.params[2])


@dataclass(frozen=True)
class IfsSpec:
    maps: tuple[MapSpec, ...]
    domain: tuple[float, float] = (0.0, 1.0)

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        lo, hi = (float(v) for v in self.domain)
        object.__setattr__(self, "domain", (lo, hi))
        if len(self.maps) < 2:
            raise InputError("an IFS needs at least two maps")
        if not lo < hi:
            raise InputError(f"domain must satisfy x_lo < x_hi, got {self.domain}")

    @classmethod
    def affine(cls, ratios: Sequence[float], offsets: Sequence[float] | None = None,
               domain=(0.0, 1.0)) -> "IfsSpec":
        """Affine system; without offsets, two ratios are placed flush left/right."""
        if offsets is None:
            if len(ratios) != 2:
                raise InputError("offsets are required for more than two maps")
            lo, hi = domain
            offsets = (lo * (1 - ratios[0]), hi - ratios[1] * hi)
        return cls(tuple(MapSpec.affine(r, o) for r, o in zip(ratios, offsets)), domain)

    @property
    def alphabet_size(self) -> int:
        return len(self.maps)

    @property
    def is_affine(self) -> bool:
        return all(m.is_affine for m in self.maps)

    @property
    def width(self) -> float:
        return self.domain[1] - self.domain[0]

    def ratios(self) -> tuple[float, ...]:
        if not self.is_affine:
            raise InputError("ratios are only defined for affine systems")
        return tuple(m.params[0] for m in self.maps)

    def contraction_bound(self, grid: int = DEFAULT_GRID) -> float:
        xs = np.linspace(*self.domain, grid)
        return max(float(np.max(np.abs(m.derivative(xs)))) for m in self.maps)

    def image_order(self) -> list[int]:
        """Symbols sorted by the position of their first-level image."""
        lo = self.domain[0]
        return sorted(range(self.alphabet_size), key=lambda a: self.maps[a](lo))


def middle_thirds() -> IfsSpec:
    return IfsSpec.affine((1 / 3, 1 / 3), (0.0, 2 / 3))


@dataclass(frozen=True)
class Word:
    """Finite word over the alphabet.

    ``gap`` is set by :func:`encode` when the coded point falls in a gap
    right after this prefix.
    """

    symbols: tuple[int, ...] = ()
    gap: bool = False

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(int(s) for s in self.symbols))

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def __getitem__(self, item):
        return self.symbols[item]


def _symbols(word) -> tuple[int, ...]:
    if isinstance(word, Word):
        return word.symbols
    return tuple(int(s) for s in word)


def check_word(spec: IfsSpec, word) -> tuple[int, ...]:
    symbols = _symbols(word)
    for s in symbols:
        if not 0 <= s < spec.alphabet_size:
            raise InputError(
                f"symbol {s} out of range for alphabet size {spec.alphabet_size}"
            )
    return symbols


@dataclass(frozen=True)
class CylinderInfo:
    word: Word
    interval: tuple[float, float]
    anchor: float

    @property
    def diameter(self) -> float:
        return self.interval[1] - self.interval[0]


@dataclass(frozen=True)
class CodedPoint:
    """Infinite word ``prefix`` followed by a repeated tail.

    ``tail_kind`` is ``"periodic"`` (tail word repeated forever) or
    ``"constant"`` (a one-letter tail).
    """

    prefix: tuple[int, ...]
    tail_kind: str
    tail: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(int(s) for s in self.prefix))
        object.__setattr__(self, "tail", tuple(int(s) for s in self.tail))
        if self.tail_kind not in ("periodic", "constant"):
            raise InputError(f"unknown tail kind {self.tail_kind!r}")
        if not self.tail:
            raise InputError("tail must be non-empty")
        if self.tail_kind == "constant" and len(self.tail) != 1:
            raise InputError("a constant tail has exactly one symbol")

    @classmethod
    def constant(cls, symbol: int, prefix: Sequence[int] = ()) -> "CodedPoint":
        return cls(tuple(prefix), "constant", (symbol,))

    @classmethod
    def periodic(cls, period: Sequence[int], prefix: Sequence[int] = ()) -> "CodedPoint":
        return cls(tuple(prefix), "periodic", tuple(period))

    @property
    def eventually_constant(self) -> bool:
        """True when the point lies in the endpoint set (tail 0 or 1 forever)."""
        return len(set(self.tail)) == 1 and self.tail[0] in (0, 1)

    def shift(self, n: int) -> "CodedPoint":
        """The point with its first ``n`` letters removed."""
        if n <= len(self.prefix):
            return CodedPoint(self.prefix[n:], self.tail_kind, self.tail)
        r = (n - len(self.prefix)) % len(self.tail)
        return CodedPoint((), self.tail_kind, self.tail[r:] + self.tail[:r])

    def symbols(self, n: int) -> tuple[int, ...]:
        out = list(self.prefix[:n])
        i = 0
        while len(out) < n:
            out.append(self.tail[i % len(self.tail)])
            i += 1
        return tuple(out)


@dataclass(frozen=True)
class Violation:
    condition: str
    detail: str
    witnesses: tuple = field(default=())


def compose(spec: IfsSpec, word, x):
    """Evaluate ``f_word(x)``; works elementwise on arrays."""
    for s in reversed(_symbols(word)):
        x = spec.maps[s](x)
    return x


def log_derivative(spec: IfsSpec, word, x):
    """``log f_word'(x)`` via the chain rule."""
    total = 0.0 * x
    for s in reversed(_symbols(word)):
        total = total + np.log(spec.maps[s].derivative(x))
        x = spec.maps[s](x)
    return total


def validate_ifs(spec: IfsSpec, grid: int = DEFAULT_GRID) -> list[Violation]:
    lo, hi = spec.domain
    xs = np.linspace(lo, hi, grid)
    out: list[Violation] = []
    images = []
    for a, m in enumerate(spec.maps):
        d = m.derivative(xs)
        if np.any(d <= 0):
            k = int(np.argmax(d <= 0))
            out.append(Violation("orientation", f"map {a} has f' <= 0", (float(xs[k]),)))
        if np.any(np.abs(d) >= 1):
            k = int(np.argmax(np.abs(d) >= 1))
            out.append(Violation("contraction", f"map {a} has |f'| >= 1", (float(xs[k]),)))
        ys = m(xs)
        a_lo, a_hi = float(np.min(ys)), float(np.max(ys))
        if a_lo < lo or a_hi > hi:
            out.append(Violation("into", f"map {a} leaves the domain", (a_lo, a_hi)))
        images.append((a_lo, a_hi, a))
    images.sort()
    for (l1, r1, a), (l2, r2, b) in zip(images, images[1:]):
        if r1 >= l2:
            out.append(Violation(
                "strong separation", f"images of maps {a} and {b} intersect", (r1, l2)
            ))
    if images[0][2] != 0:
        out.append(Violation("labeling", "map 0 must have the leftmost image",
                             (images[0][2],)))
    if images[-1][2] != 1:
        out.append(Violation("labeling", "map 1 must have the rightmost image",
                             (images[-1][2],)))
    return out


def cylinder(spec: IfsSpec, word) -> CylinderInfo:
    symbols = check_word(spec, word)
    lo, hi = spec.domain
    a = compose(spec, symbols, lo)
    b = compose(spec, symbols, hi)
    return CylinderInfo(Word(symbols), (min(a, b), max(a, b)), a)


def encode(spec: IfsSpec, x: float, depth: int) -> Word:
    """Word of length ``depth`` whose cylinder contains ``x``.

    Returns a shorter word with ``gap=True`` when ``x`` falls between the
    children of that prefix. Shared boundaries go to the left cylinder.
    """
    lo, hi = spec.domain
    if not lo <= x <= hi:
        raise InputError(f"x={x} outside the domain {spec.domain}")
    if depth < 1:
        raise InputError("depth must be >= 1")
    order = spec.image_order()
    prefix: list[int] = []
    for _ in range(depth):
        for a in order:
            c = cylinder(spec, prefix + [a])
            if c.interval[0] <= x <= c.interval[1]:
                prefix.append(a)
                break
        else:
            return Word(tuple(prefix), gap=True)
    return Word(tuple(prefix))


def _fixed_point_of(fn, lo: float, hi: float, tol: float) -> float:
    x = 0.5 * (lo + hi)
    for _ in range(FIXED_POINT_MAXITER):
        nxt = fn(x)
        if abs(nxt - x) <= tol:
            return float(nxt)
        x = nxt
    return float(x)


def fixed_point(spec: IfsSpec, symbol: int) -> float:
    (symbol,) = check_word(spec, (symbol,))
    m = spec.maps[symbol]
    for end in spec.domain:
        # exact for maps fixing a domain endpoint, where the closed form can round
        if m(end) == end:
            return end
    if m.is_affine:
        ratio, offset = m.params
        return offset / (1.0 - ratio)
    return _fixed_point_of(m, *spec.domain, FIXED_POINT_TOL)


def decode(spec: IfsSpec, point: CodedPoint, tolerance: float = 1e-12) -> float:
    """Real number coded by ``point``.

    The tail is the fixed point of the composed period map; the prefix is
    then applied to it.
    """
    if tolerance <= 0:
        raise InputError("tolerance must be positive")
    check_word(spec, point.prefix + point.tail)
    period = point.tail
    maps = [spec.maps[s] for s in period]
    if len(period) == 1:
        y = fixed_point(spec, period[0])
    elif all(m.is_affine for m in maps):
        # composite of affine maps: x -> R x + O
        R, O = 1.0, 0.0
        for m in maps:
            r, o = m.params
            R, O = R * r, R * o + O
        y = O / (1.0 - R)
    else:
        y = _fixed_point_of(lambda x: compose(spec, period, x), *spec.domain, tolerance)
    return float(compose(spec, point.prefix, y))


def distortion_constant(spec: IfsSpec, grid: int = DEFAULT_GRID) -> float:
    """Uniform bound K with f_w'(x)/f_w'(y) in [1/K, K] for all words."""
    if spec.is_affine:
        return 1.0
    xs = np.linspace(*spec.domain, grid)
    lam = spec.contraction_bound(grid)
    c = max(m.second_derivative_bound() / float(np.min(m.derivative(xs)))
            for m in spec.maps)
    return math.exp(c * spec.width / (1.0 - lam))
