"""Closed-form reference values for affine two-map systems.

Nothing here imports the solver modules; the test suite compares these
formulas against the numerical paths.
"""

import math

from .errors import InputError


def _check_ratios(ratios):
    ratios = [float(r) for r in ratios]
    if not ratios or any(not 0.0 < r < 1.0 for r in ratios):
        raise InputError(f"ratios must lie in (0, 1), got {ratios}")
    return ratios


def affine_pressure(ratios, t):
    """``log sum_a ratio_a**t``."""
    ratios = _check_ratios(ratios)
    return math.log(math.fsum(r ** t for r in ratios))


def affine_delta(ratios, tol=1e-15):
    """Root of ``sum_a ratio_a**d = 1`` by bisection on the closed form."""
    ratios = _check_ratios(ratios)
    lo, hi = 0.0, 1.0
    while math.fsum(r ** hi for r in ratios) > 1.0:
        hi *= 2.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if math.fsum(r ** mid for r in ratios) > 1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def equal_ratio_delta(count, ratio):
    return math.log(count) / math.log(1.0 / ratio)


def falconer_dimension(delta, alpha):
    """``delta**2 / alpha`` for ``alpha > delta > 0``."""
    if not delta > 0:
        raise InputError("delta must be positive")
    if not alpha > delta:
        raise InputError(f"alpha must exceed delta (alpha={alpha}, delta={delta})")
    return delta * delta / alpha


def bernoulli_dimension(probabilities, ratios):
    """Entropy over Lyapunov exponent: ``sum p log p / sum p log r``."""
    ratios = _check_ratios(ratios)
    p = [float(x) for x in probabilities]
    if len(p) != len(ratios):
        raise InputError("probabilities and ratios differ in length")
    if any(x <= 0.0 for x in p) or abs(math.fsum(p) - 1.0) > 1e-12:
        raise InputError(f"probabilities must be positive and sum to 1, got {p}")
    return (math.fsum(x * math.log(x) for x in p)
            / math.fsum(x * math.log(r) for x, r in zip(p, ratios)))


def darst_probabilities(ratios):
    ratios = _check_ratios(ratios)
    total = math.fsum(ratios)
    return [r / total for r in ratios]


def darst_beta_closed_form(ratios, s):
    """``P(s phi) / P(phi)`` for the self-similar system with ``psi = phi - P(phi)``."""
    if len(ratios) != 2:
        raise InputError("the Darst closed form is stated for two maps")
    denom = affine_pressure(ratios, 1.0)
    if denom == 0.0:
        raise InputError("ratios sum to 1: P(phi) = 0 and the normalization degenerates")
    return affine_pressure(ratios, s) / denom


def ahlfors_beta(delta, alpha, t):
    """``(delta - t) / (delta - alpha)``, the beta function for ``psi = delta*phi``."""
    return (delta - t) / (delta - alpha)


def cantor_function(x, digits=60):
    """Middle-thirds Cantor function by reading ternary digits.

    Stops at the first digit 1 (x sits in a removed interval).
    """
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    value, scale = 0.0, 0.5
    for _ in range(digits):
        x *= 3.0
        digit = int(x)
        x -= digit
        if digit == 1:
            return value + scale
        value += scale * (digit // 2)
        scale *= 0.5
    return value
