"""
ClusterDilog — q-Numbers

Coefficients of every quantum computation are rational functions of one
variable t standing for q^{1/d}, where the root order d belongs to the
context. sympy keeps the fractions reduced, so q = 1 is substituted after
cancellation and a remaining pole is a genuine one.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import lcm

from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement, field

from core.algebra.polynomial import qq, to_fraction
from core.errors import LimitMismatch

logger = logging.getLogger(__name__)

QField, T = field("t", QQ)
QCoeff = FracElement


def coeff(c) -> QCoeff:
    """Coerce int, Fraction or a field element into Q(t)."""
    if isinstance(c, FracElement):
        return c
    return QField(qq(Fraction(c)))


def root_order(*values) -> int:
    """Smallest d with d·x integral for every rational x given."""
    return lcm(1, *(Fraction(x).denominator for x in values))


def q_power(x, d: int) -> QCoeff:
    """q^x = t^{d·x}; x·d must be an integer."""
    e = Fraction(x) * d
    if e.denominator != 1:
        raise ValueError(f"q^{x} needs a root of q of order divisible by {Fraction(x).denominator}, context has {d}")
    return T ** int(e)


def q_number(a, d: int = 1) -> QCoeff:
    """Balanced [a]_q = (q^a - q^{-a}) / (q - q^{-1}) for rational a."""
    return (q_power(a, d) - q_power(-Fraction(a), d)) / (q_power(1, d) - q_power(-1, d))


def q_pochhammer(base: QCoeff, n: int) -> QCoeff:
    """(base; base)_n = (1 - base)(1 - base²)⋯(1 - baseⁿ)."""
    result = QField.one
    for k in range(1, n + 1):
        result = result * (1 - base**k)
    return result


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int, d: int = 1) -> QCoeff:
    """Gaussian binomial (q)_n / ((q)_k (q)_{n-k}) with q = t^d."""
    if k < 0 or k > n:
        return QField.zero
    base = q_power(1, d)
    return q_pochhammer(base, n) / (q_pochhammer(base, k) * q_pochhammer(base, n - k))


def at_q_one(c: QCoeff) -> Fraction:
    """Value at q = 1 of a reduced coefficient."""
    c = coeff(c)
    num, den = c.numer(1), c.denom(1)
    if not den:
        raise LimitMismatch(f"coefficient {c.as_expr()} has a pole at q = 1")
    return to_fraction(num) / to_fraction(den)


def format_coeff(c: QCoeff, d: int = 1) -> str:
    text = str(coeff(c).as_expr())
    return text if d == 1 else f"{text} (t = q^(1/{d}))"
