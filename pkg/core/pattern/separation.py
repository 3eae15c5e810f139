"""
ClusterDilog — Separation Formulas

Reads y- and x-variables off a pattern run: y_i(s) = y^{c_i(s)} Π F_j(s)^{b_ji(s)}
as factored values, the tropical part x^{g_i(s)} of x-variables, the
tropical image used by the Fock-Goncharov decomposition, and an exact ŷ check
in the field of rational functions in the initial x-variables.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement, FracField, field

from core.algebra.factored import FactoredSF
from core.algebra.polynomial import ExpVector, MultiPoly
from core.pattern.engine import PatternRun

logger = logging.getLogger(__name__)


def _check_index(run: PatternRun, s: int, i: int | None = None) -> None:
    if not 0 <= s <= run.length:
        raise IndexError(f"step {s} outside 0..{run.length}")
    if i is not None and not 1 <= i <= run.rank:
        raise IndexError(f"index {i} outside 1..{run.rank}")


def separation_y(run: PatternRun, s: int, i: int, refine: bool = False) -> FactoredSF:
    """y_i(s) in the initial y-variables (i is 1-based)."""
    _check_index(run, s, i)
    c, b = run.c[s], run.b[s]
    value = FactoredSF.from_monomial(c[:, i - 1])
    for j in range(run.rank):
        if b[j, i - 1] and run.f[s][j] != 1:
            value = value * run.factored_f(s, j) ** int(b[j, i - 1])
    return value.refine() if refine else value


def y_at_step(run: PatternRun, s: int, refine: bool = False) -> FactoredSF:
    """y_{k_s}(s), the argument of the s-th dilogarithm term."""
    return separation_y(run, s, run.direction(s), refine)


@dataclass(frozen=True)
class XSeparation:
    """x_i(s) = x^tropical · F(ŷ) / F|_P(y); the denominator stays with the caller."""

    tropical: ExpVector
    f_hat: MultiPoly


def separation_x(run: PatternRun, s: int, i: int) -> XSeparation:
    _check_index(run, s, i)
    return XSeparation(tuple(int(v) for v in run.g[s][:, i - 1]), run.f[s][i - 1])


def yhat_exponents(run: PatternRun) -> tuple[ExpVector, ...]:
    """ŷ_j = Π x_i^{b_ij} of the initial seed, as x-exponent vectors."""
    b0 = run.b[0]
    return tuple(tuple(int(v) for v in b0[:, j]) for j in range(run.rank))


def fg_tropical_image(run: PatternRun, s: int) -> tuple[ExpVector, ...]:
    """Monomials y^{c_i(s)}: the tropical part of the y-variables at step s."""
    _check_index(run, s)
    return tuple(tuple(int(v) for v in run.c[s][:, i]) for i in range(run.rank))


@dataclass(frozen=True)
class FGStep:
    """Data of the nontropical part at step s: the dilogarithm element Ψ[c⁺]^{ε δ}."""

    c_plus: ExpVector
    sign: int
    weight: int


def fg_step(run: PatternRun, s: int) -> FGStep:
    if not 0 <= s < run.length:
        raise IndexError(f"step {s} outside 0..{run.length - 1}")
    return FGStep(run.c_plus[s], run.signs[s], run.weight(s))


@lru_cache(maxsize=None)
def x_field(n: int) -> FracField:
    return field(",".join(f"x{i}" for i in range(1, n + 1)), QQ)[0]


def _monomial(K: FracField, exps) -> FracElement:
    value = K.one
    for gen, e in zip(K.gens, exps):
        if e:
            value = value * gen ** int(e)
    return value


def _evaluate(poly: MultiPoly, values: list[FracElement], K: FracField) -> FracElement:
    total = K.zero
    for m, coeff in poly.items():
        term = K(coeff)
        for v, e in zip(values, m):
            if e:
                term = term * v**e
        total = total + term
    return total


def _x_cluster(run: PatternRun, upto: int) -> list[list[FracElement]]:
    """x-variables with trivial coefficients along the word, exact in QQ(x)."""
    K = x_field(run.rank)
    xs = [list(K.gens)]
    for s in range(upto):
        b = run.b[s]
        k0 = run.direction(s) - 1
        x = xs[-1]
        plus, minus = K.one, K.one
        for i in range(run.rank):
            if b[i, k0] > 0:
                plus = plus * x[i] ** int(b[i, k0])
            elif b[i, k0] < 0:
                minus = minus * x[i] ** int(-b[i, k0])
        nxt = list(x)
        nxt[k0] = (plus + minus) / x[k0]
        xs.append(nxt)
    return xs


def _yhat(x: list[FracElement], b, K: FracField) -> list[FracElement]:
    out = []
    for i in range(len(x)):
        value = K.one
        for j in range(len(x)):
            if b[j, i]:
                value = value * x[j] ** int(b[j, i])
        out.append(value)
    return out


def yhat_check(run: PatternRun, s: int) -> bool:
    """
    Exact check at step s of three facts about ŷ_i = Π x_j^{b_ji}: it mutates by
    the y-rule into step s+1, it equals the separation formula evaluated at the
    initial ŷ, and x_i(s) = x^{g_i(s)} F_i(s)(ŷ).
    """
    if not 0 <= s < run.length:
        raise IndexError(f"step {s} outside 0..{run.length - 1}")
    K = x_field(run.rank)
    xs = _x_cluster(run, s + 1)
    yhat0 = _yhat(xs[0], run.b[0], K)
    here = _yhat(xs[s], run.b[s], K)
    there = _yhat(xs[s + 1], run.b[s + 1], K)
    k0 = run.direction(s) - 1
    b = run.b[s]
    yk = here[k0]
    for i in range(run.rank):
        if i == k0:
            expected = 1 / yk
        else:
            expected = here[i] * yk ** max(int(b[k0, i]), 0) * (1 + yk) ** int(-b[k0, i])
        if expected != there[i]:
            logger.debug("ŷ mutation fails at step %d index %d", s, i + 1)
            return False
    for step, yh in ((s, here), (s + 1, there)):
        fvals = [_evaluate(p, yhat0, K) for p in run.f[step]]
        for i in range(run.rank):
            sep = _monomial(K, [0] * run.rank)
            for j, e in enumerate(run.c[step][:, i]):
                if e:
                    sep = sep * yhat0[j] ** int(e)
            for j in range(run.rank):
                if run.b[step][j, i]:
                    sep = sep * fvals[j] ** int(run.b[step][j, i])
            if sep != yh[i]:
                logger.debug("ŷ separation fails at step %d index %d", step, i + 1)
                return False
            if _monomial(K, run.g[step][:, i]) * fvals[i] != xs[step][i]:
                logger.debug("x separation fails at step %d index %d", step, i + 1)
                return False
    return True
