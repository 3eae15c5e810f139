"""
ClusterDilog — Wedge Constancy Conditions

Exact bookkeeping in ∧² of the multiplicative group of subtraction-free
rational functions. A factored value y^m Π A^e with irreducible atoms A is a
vector over the free basis {y_1..y_n} ∪ {atoms}; the wedge of two such vectors
is stored on ordered basis pairs with rational coefficients.

Two independent routes to the constancy condition of a period are provided:
the direct sum Σ δ y ∧ (1 + y), and the element V(s) whose mutation difference
is exactly one such term.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from core.algebra.factored import ATOMS, FactoredSF
from core.algebra.polynomial import format_poly
from core.errors import NonZeroWedge, StepMismatch
from core.pattern.engine import PatternRun
from core.pattern.periodicity import detect_period
from core.pattern.separation import y_at_step
from models.cdl_models import VtReport, WedgeReport

logger = logging.getLogger(__name__)

# (0, i) is the generator y_{i+1}, (1, a) is interned atom a
BasisKey = tuple[int, int]


def basis_vector(value: FactoredSF) -> dict[BasisKey, Fraction]:
    """Coordinates of a value after refinement into irreducible atoms."""
    refined = value.refine()
    vec = {(0, i): Fraction(e) for i, e in enumerate(refined.monomial) if e}
    vec.update({(1, a): Fraction(e) for a, e in refined.factors})
    return vec


def basis_name(key: BasisKey) -> str:
    kind, index = key
    return f"y{index + 1}" if kind == 0 else f"({format_poly(ATOMS.poly(index))})"


@dataclass(frozen=True)
class WedgeElement:
    """Σ c_{AB} A ∧ B over basis pairs A < B; zero coefficients are never stored."""

    coeffs: dict[tuple[BasisKey, BasisKey], Fraction] = field(default_factory=dict)

    @classmethod
    def wedge(cls, u: FactoredSF, v: FactoredSF, scale=1) -> "WedgeElement":
        left, right = basis_vector(u), basis_vector(v)
        coeffs: dict[tuple[BasisKey, BasisKey], Fraction] = {}
        for a, x in left.items():
            for b, y in right.items():
                if a == b:
                    continue
                pair, sign = ((a, b), 1) if a < b else ((b, a), -1)
                coeffs[pair] = coeffs.get(pair, Fraction(0)) + sign * Fraction(scale) * x * y
        return cls({k: c for k, c in coeffs.items() if c})

    def __add__(self, other: "WedgeElement") -> "WedgeElement":
        coeffs = dict(self.coeffs)
        for pair, c in other.coeffs.items():
            total = coeffs.get(pair, Fraction(0)) + c
            if total:
                coeffs[pair] = total
            else:
                coeffs.pop(pair, None)
        return WedgeElement(coeffs)

    def __neg__(self) -> "WedgeElement":
        return WedgeElement({pair: -c for pair, c in self.coeffs.items()})

    def __sub__(self, other: "WedgeElement") -> "WedgeElement":
        return self + (-other)

    def __eq__(self, other) -> bool:
        return isinstance(other, WedgeElement) and self.coeffs == other.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs

    def atoms(self) -> set[BasisKey]:
        return {key for pair in self.coeffs for key in pair}

    def terms(self) -> list[str]:
        return [
            f"{c} {basis_name(a)}∧{basis_name(b)}"
            for (a, b), c in sorted(self.coeffs.items())
        ]

    def __str__(self) -> str:
        return " + ".join(self.terms()) or "0"


def step_wedge(run: PatternRun, s: int) -> WedgeElement:
    """δ_{k_s} y_{k_s}(s) ∧ (1 + y_{k_s}(s))."""
    y = y_at_step(run, s, refine=True)
    return WedgeElement.wedge(y, y.one_plus(), run.weight(s))


def wedge_sum(run: PatternRun) -> WedgeElement:
    total = WedgeElement()
    for s in range(run.length):
        total = total + step_wedge(run, s)
    return total


def wedge_check(run: PatternRun) -> WedgeElement:
    """Σ_s δ y ∧ (1 + y) over the run; raises NonZeroWedge unless it cancels."""
    total = wedge_sum(run)
    if not total.is_zero():
        raise NonZeroWedge(f"{len(total.coeffs)} surviving terms: {'; '.join(total.terms()[:5])}")
    logger.info("wedge sum over %d steps cancels", run.length)
    return total


def wedge_report(run: PatternRun) -> WedgeReport:
    total = wedge_sum(run)
    atoms = set()
    for s in range(run.length):
        atoms |= step_wedge(run, s).atoms()
    return WedgeReport(
        steps=run.length,
        atoms=len(atoms),
        nonzero_terms=len(total.coeffs),
        passed=total.is_zero(),
    )


def v_element(run: PatternRun, s: int) -> WedgeElement:
    """V(s) = Σ δ_i F_i ∧ [y_i] + ½ Σ δ_i b_ji F_i ∧ F_j with [y_i] = y^{c_i(s)}."""
    n = run.rank
    f = [run.factored_f(s, i) for i in range(n)]
    c, b = run.c[s], run.b[s]
    total = WedgeElement()
    for i in range(n):
        if f[i].is_monomial():
            continue
        delta_i = run.delta[i]
        total = total + WedgeElement.wedge(f[i], FactoredSF.from_monomial(c[:, i]), delta_i)
        for j in range(n):
            if b[j, i] and not f[j].is_monomial():
                total = total + WedgeElement.wedge(f[i], f[j], Fraction(delta_i * int(b[j, i]), 2))
    return total


def vt_check(run: PatternRun) -> VtReport:
    """
    V(s+1) - V(s) = δ_{k_s} y_{k_s}(s) ∧ (1 + y_{k_s}(s)) at every step, and
    V(P) = V(0) when the run is periodic.
    """
    current = v_element(run, 0)
    for s in range(run.length):
        following = v_element(run, s + 1)
        if following - current != step_wedge(run, s):
            raise StepMismatch(f"V({s + 1}) - V({s}) differs from the step wedge at s = {s}")
        current = following
    if run.length and detect_period(run) is not None and not (current - v_element(run, 0)).is_zero():
        raise StepMismatch(f"V({run.length}) differs from V(0) on a periodic run")
    logger.info("V-element differences match at all %d steps", run.length)
    return VtReport(steps=run.length, passed=True)
