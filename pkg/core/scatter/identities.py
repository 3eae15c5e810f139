"""
ClusterDilog — Group-Level Identities

A period of a Y-pattern gives the relation

    Ψ[c⁺(P-1)]^{ε δ} ⋯ Ψ[c⁺(0)]^{ε δ} = id

in the structure group, checked here through the faithful action (with the
principally extended form when Ω is singular). A loop in a rank-2 diagram
gives the formal identity Σ ε s δ(hn) L̃(y_z[hn]) = 0, where

    L̃(x) = Σ_j (-1)^{j+1} x^j / j² - ½ log x · log(1 + x)

is expanded as a power series plus log(y_i) times power series.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from core.algebra.polynomial import MultiPoly, format_poly, monomial, poly_ring, qq
from core.algebra.series import log_trunc, mul_trunc, truncate
from core.errors import NonZeroResidual, RelationFails
from core.pattern.engine import PatternRun
from core.scatter.diagram import Rank2Diagram, wall_crossings_for_loop
from core.scatter.group import GroupElement, as_omega, is_singular, principal_omega, psi_element
from core.settings import setting
from models.cdl_models import LoopDIReport

logger = logging.getLogger(__name__)


def period_relation_product(run: PatternRun, omega=None, ell: int | None = None) -> GroupElement:
    """Π_s Ψ[c⁺(s)]^{ε_s δ_{k_s}} with step 0 rightmost."""
    ell = setting("scatter", "degree", 12) if ell is None else ell
    decomposition = run.word.matrix.decomposition()
    omega = as_omega(decomposition if omega is None else omega)
    pad = 0
    if is_singular(omega):
        omega = principal_omega(decomposition)
        pad = run.rank
    result = GroupElement.identity(omega, ell)
    for s in range(run.length):
        c = run.c_plus[s] + (0,) * pad
        result = psi_element(c, run.signs[s] * run.weight(s), omega, ell) * result
    return result


def period_relation_check(run: PatternRun, omega=None, ell: int | None = None) -> bool:
    """Raise RelationFails unless the product of Ψ elements along the run is the identity."""
    product = period_relation_product(run, omega, ell)
    if not product.is_identity():
        raise RelationFails(f"Ψ product along {run.word.dirs} is not the identity: {product}")
    logger.info("group relation holds for the word %s to degree %d", run.word.dirs, product.trunc)
    return True


@dataclass(frozen=True)
class LogSeries:
    """base + Σ_i log(y_i) · log_parts[i], every series truncated at trunc."""

    base: MultiPoly
    log_parts: tuple[MultiPoly, ...]
    trunc: int

    @classmethod
    def zero(cls, n: int, ell: int) -> "LogSeries":
        ring = poly_ring(n)
        return cls(ring.zero, tuple(ring.zero for _ in range(n)), ell)

    def __add__(self, other: "LogSeries") -> "LogSeries":
        return LogSeries(
            self.base + other.base,
            tuple(a + b for a, b in zip(self.log_parts, other.log_parts)),
            min(self.trunc, other.trunc),
        )

    def scale(self, c) -> "LogSeries":
        c = qq(Fraction(c))
        return LogSeries(self.base * c, tuple(p * c for p in self.log_parts), self.trunc)

    def is_zero(self) -> bool:
        return not truncate(self.base, self.trunc) and not any(truncate(p, self.trunc) for p in self.log_parts)

    def surviving_terms(self) -> list[str]:
        out = [f"base: {format_poly(truncate(self.base, self.trunc))}"] if truncate(self.base, self.trunc) else []
        for i, p in enumerate(self.log_parts):
            if truncate(p, self.trunc):
                out.append(f"log y{i + 1}: {format_poly(truncate(p, self.trunc))}")
        return out


def rogers_expansion(m, unit: MultiPoly, ell: int) -> LogSeries:
    """L̃(y^m·unit) for m >= 0, m != 0, and unit a series with constant term 1."""
    x = mul_trunc(monomial(tuple(int(v) for v in m)), unit, ell)
    ring = x.ring
    li2 = ring.zero
    log1p = ring.zero
    power = ring.one
    for j in range(1, ell + 1):
        power = mul_trunc(power, x, ell)
        if not power:
            break
        sign = (-1) ** (j + 1)
        li2 += power * qq(Fraction(sign, j * j))
        log1p += power * qq(Fraction(sign, j))
    half = qq(Fraction(1, 2))
    base = li2 - mul_trunc(log_trunc(unit, ell), log1p, ell) * half
    parts = tuple(log1p * qq(Fraction(-int(v), 2)) for v in m)
    return LogSeries(base, parts, ell)


def loop_di_formal(d: Rank2Diagram, crossings=None, ell: int | None = None, strict: bool = True) -> LogSeries:
    """
    Σ ε s δ(hn) L̃(y_z[hn]) over a loop based in the positive chamber, with
    y_z[hn] obtained by carrying y^{hn} back along the crossings already made.
    """
    ell = d.trunc if ell is None else ell
    if ell > d.trunc:
        raise ValueError(f"diagram is truncated at {d.trunc}, cannot expand to {ell}")
    crossings = wall_crossings_for_loop(d) if crossings is None else list(crossings)
    total = LogSeries.zero(2, ell)
    back = GroupElement.identity(d.omega, ell)
    for direction, sign in crossings:
        wall = d.wall_at(direction)
        for f in wall.factors:
            if sum(f.n) > ell:
                continue
            total = total + rogers_expansion(f.n, back.act(f.n), ell).scale(sign * f.exponent)
        g = wall.element(d.omega, ell)
        back = back * (g.inverse() if sign == 1 else g)
    if strict and not total.is_zero():
        raise NonZeroResidual("loop identity leaves " + "; ".join(total.surviving_terms()))
    return total


def loop_di_report(d: Rank2Diagram, ell: int | None = None) -> LoopDIReport:
    ell = min(setting("scatter", "loop_degree", 10), d.trunc) if ell is None else ell
    crossings = wall_crossings_for_loop(d)
    residual = loop_di_formal(d, crossings, ell, strict=False)
    terms = sum(1 for r, _ in crossings for f in d.wall_at(r).factors if sum(f.n) <= ell)
    report = LoopDIReport(delta=list(d.delta), degree=ell, terms=terms, passed=residual.is_zero())
    logger.info("loop identity for (%d,%d) to degree %d: %s", *d.delta, ell, "ok" if report.passed else "fails")
    return report
