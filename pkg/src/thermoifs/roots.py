"""Bracketed bisection for monotone scalar equations."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import NumericalError

XTOL = 1e-10
MAXITER = 200


@dataclass(frozen=True)
class Root:
    x: float
    fx: float
    iterations: int


def bisect(f: Callable[[float], float], lo: float, hi: float, *,
           xtol: float = XTOL, maxiter: int = MAXITER, what: str = "root",
           f_lo: float | None = None, f_hi: float | None = None) -> Root:
    f_lo = f(lo) if f_lo is None else f_lo
    f_hi = f(hi) if f_hi is None else f_hi
    if f_lo == 0.0:
        return Root(lo, 0.0, 0)
    if f_hi == 0.0:
        return Root(hi, 0.0, 0)
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise NumericalError(
            f"{what}: no sign change on [{lo!r}, {hi!r}] "
            f"(f(lo)={f_lo!r}, f(hi)={f_hi!r})"
        )
    mid, f_mid = 0.5 * (lo + hi), None
    for it in range(1, maxiter + 1):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0 or hi - lo <= xtol or mid in (lo, hi):
            return Root(mid, f_mid, it)
        if math.copysign(1.0, f_mid) == math.copysign(1.0, f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return Root(mid, f_mid, maxiter)


def expand_bracket(f: Callable[[float], float], lo: float = -2.0, hi: float = 2.0,
                   max_width: float = 2.0 ** 20, what: str = "root"):
    """Grow ``[lo, hi]`` geometrically until ``f`` changes sign.

    Returns ``(lo, hi, f(lo), f(hi))``.
    """
    f_lo, f_hi = f(lo), f(hi)
    while math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi) and f_lo != 0 and f_hi != 0:
        if hi - lo >= max_width:
            raise NumericalError(
                f"{what}: no sign change up to bracket [{lo!r}, {hi!r}] "
                f"(f(lo)={f_lo!r}, f(hi)={f_hi!r})"
            )
        lo, hi = 2.0 * lo, 2.0 * hi
        f_lo, f_hi = f(lo), f(hi)
    return lo, hi, f_lo, f_hi
