"""
ClusterDilog — Dilogarithm Functions

Real Euler dilogarithm Li₂ on (-∞, 1], the Rogers dilogarithm L on [0, 1] and
the modified Rogers dilogarithm L̃(x) = L(x/(1+x)) on [0, ∞]. Li₂ is summed as
a power series on |x| <= cutoff and reduced into that disc by the reflection
and Landen identities elsewhere.
"""

import math

from core.errors import Domain
from core.settings import setting

PI2_6 = math.pi**2 / 6


def _series(x: float) -> float:
    total, power, n = 0.0, x, 1
    while True:
        term = power / (n * n)
        total += term
        if abs(term) < 1e-18 * max(abs(total), 1e-300):
            return total
        n += 1
        power *= x


def li2(x: float) -> float:
    """Li₂(x) = Σ xⁿ/n² for real x <= 1."""
    x = float(x)
    if math.isnan(x) or x > 1.0:
        raise Domain(f"li2 is real only on (-inf, 1], got {x}")
    cutoff = setting("dilog", "series_cutoff", 0.5)
    if x == 1.0:
        return PI2_6
    if x == 0.0:
        return 0.0
    if abs(x) <= cutoff:
        return _series(x)
    if x > 0.0:
        return PI2_6 - math.log(x) * math.log1p(-x) - li2(1.0 - x)
    # Landen: maps x < -cutoff into (0, 1)
    return -li2(x / (x - 1.0)) - 0.5 * math.log1p(-x) ** 2


def rogers_l(x: float) -> float:
    """L(x) = Li₂(x) + ½ log x log(1 - x) on [0, 1]."""
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise Domain(f"Rogers dilogarithm needs 0 <= x <= 1, got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return PI2_6
    if x > 0.5:
        return PI2_6 - rogers_l(1.0 - x)
    return li2(x) + 0.5 * math.log(x) * math.log1p(-x)


def mod_rogers(x: float) -> float:
    """L̃(x) = L(x/(1+x)); L̃(∞) = π²/6 and L̃(x) = π²/6 - L̃(1/x) above 1."""
    x = float(x)
    if math.isnan(x) or x < 0.0:
        raise Domain(f"modified Rogers dilogarithm needs x >= 0, got {x}")
    if math.isinf(x):
        return PI2_6
    if x > 1.0:
        return PI2_6 - mod_rogers(1.0 / x)
    return rogers_l(x / (1.0 + x))


def pentagon_residual(y1: float, y2: float) -> float:
    """Sum of L̃ over the five y-variables of the A2 period minus π²/2."""
    args = (
        y1,
        y2 * (1.0 + y1),
        (1.0 + y2 + y1 * y2) / y1,
        (1.0 + y2) / (y1 * y2),
        1.0 / y2,
    )
    return sum(mod_rogers(a) for a in args) - 3 * PI2_6


def abel_residual(x: float, y: float) -> float:
    """Five-term relation of L for 0 <= x, y < 1, minus π²/2."""
    if not (0.0 <= x < 1.0 and 0.0 <= y < 1.0):
        raise Domain(f"five-term relation of L needs 0 <= x, y < 1, got ({x}, {y})")
    xy = 1.0 - x * y
    args = (x, y, (1.0 - x) / xy, xy, (1.0 - y) / xy)
    return sum(rogers_l(a) for a in args) - 3 * PI2_6
