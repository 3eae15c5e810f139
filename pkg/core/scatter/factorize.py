"""
ClusterDilog — Ordered Factorization

Rewrites a rank-2 group element as an ordered product of dilogarithm
elements. The element is compared with the current ordered candidate; the
lowest-degree mismatch is a Lie element whose terms are central modulo higher
degrees, so each term is added to the ray through its support and the
candidate is rebuilt. Per-ray log data are finally converted into powers
Ψ[h·n0]^s, which is triangular in h.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import gcd, lcm

from core.algebra.polynomial import ExpVector
from core.errors import NonFactorizable
from core.scatter.group import (
    GroupElement,
    Omega,
    bracket,
    leading_discrepancy,
    primitive,
    psi_element,
    ray_element,
)
from models.cdl_models import format_rational

logger = logging.getLogger(__name__)

ORDERS = ("ordered", "anti")


@dataclass(frozen=True)
class DilogFactor:
    """Ψ[n]^exponent."""

    n: ExpVector
    exponent: Fraction

    def __str__(self) -> str:
        base = "[" + ",".join(str(x) for x in self.n) + "]"
        return base if self.exponent == 1 else f"{base}^{format_rational(self.exponent)}"


def format_product(factors) -> str:
    return "".join(str(f) for f in factors) or "id"


def delta_normalization(n, delta) -> Fraction:
    """δ(n): the smallest positive rational with δ(n)·n in ⊕ Z δ_i e_i, i.e. lcm of δ_i/n_i."""
    ratios = [Fraction(d, x) for d, x in zip(delta, n) if x]
    if not ratios:
        raise ValueError("δ(n) is undefined for the zero vector")
    numerators = lcm(*(r.numerator for r in ratios))
    denominators = gcd(*(r.denominator for r in ratios))
    return Fraction(numerators, denominators)


def psi_exponents(log_coeffs: dict[int, Fraction]) -> dict[int, Fraction]:
    """
    s_h with exp(Σ_j a_j X_{j n0}) = Π_h Ψ[h n0]^{s_h}, from
    a_j = Σ_{h|j} s_h (-1)^{j/h+1} / (j/h)².
    """
    top = max(log_coeffs, default=0)
    s: dict[int, Fraction] = {}
    for j in range(1, top + 1):
        value = Fraction(log_coeffs.get(j, 0))
        for h, sh in s.items():
            if j % h == 0 and h < j:
                k = j // h
                value -= sh * Fraction((-1) ** (k + 1), k * k)
        if value:
            s[j] = value
    return s


def slope_order(rays, omega: Omega, order: str = "ordered") -> list:
    """
    Sort primitive directions so that a left n' and a right n satisfy
    {n', n} <= 0 ("ordered") or >= 0 ("anti").
    """
    if order not in ORDERS:
        raise ValueError(f"order must be one of {ORDERS}, got {order!r}")
    sign = 1 if order == "ordered" else -1

    def compare(a, b) -> int:
        value = sign * bracket(omega, a, b)
        return -1 if value < 0 else (1 if value > 0 else 0)

    return sorted(rays, key=cmp_to_key(compare))


def ordered_product(rays: dict[ExpVector, dict[int, Fraction]], omega: Omega, ell: int,
                    order: str = "ordered") -> GroupElement:
    """Product of the ray elements exp(Σ_j a_j X_{j n0}) in slope order, built from the right."""
    result = GroupElement.identity(omega, ell)
    for n0 in reversed(slope_order(list(rays), omega, order)):
        result = ray_element(n0, rays[n0], omega, ell) * result
    return result


def product_of_factors(factors, omega, ell: int) -> GroupElement:
    """Left-to-right product of DilogFactor values."""
    result = GroupElement.identity(omega, ell)
    for f in reversed(list(factors)):
        result = psi_element(f.n, f.exponent, omega, ell) * result
    return result


def group_log_factorize(g: GroupElement, order: str = "ordered") -> list[tuple[ExpVector, list[DilogFactor]]]:
    """
    Ordered product equal to g mod degree > trunc, as (n0, factors on the ray of n0)
    from left to right.
    """
    if g.rank != 2:
        raise ValueError(f"ordered factorization is a rank-2 operation, got rank {g.rank}")
    ell = g.trunc
    rays: dict[ExpVector, dict[int, Fraction]] = {}
    while True:
        found = leading_discrepancy(g, ordered_product(rays, g.omega, ell, order))
        if found is None:
            break
        d, part = found
        for v, c in part.coeffs.items():
            n0, h = primitive(v)
            line = rays.setdefault(n0, {})
            line[h] = line.get(h, Fraction(0)) + c
        logger.debug("degree %d: %d new ray terms", d, len(part.coeffs))
    result = []
    for n0 in slope_order(list(rays), g.omega, order):
        exponents = psi_exponents(rays[n0])
        factors = [DilogFactor(tuple(h * x for x in n0), s) for h, s in sorted(exponents.items())]
        if factors:
            result.append((n0, factors))
    if ordered_product(rays, g.omega, ell, order) != g:
        raise NonFactorizable("ordered product does not reproduce the element")
    logger.info("factorized into %d rays up to degree %d", len(result), ell)
    return result


def check_positive_realization(factors, delta) -> None:
    """Every exponent must be a positive integer multiple of δ(h·n)."""
    for f in factors:
        s = f.exponent / delta_normalization(f.n, delta)
        if s <= 0 or s.denominator != 1:
            raise NonFactorizable(f"exponent {format_rational(f.exponent)} of {f} is not a positive multiple of δ(n)")
