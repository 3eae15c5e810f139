"""
ClusterDilog — Quantum Mutations

Quantum Y-seeds hold each Y_i(s) as a truncated element of the quantum torus
of the initial skew form. Mutation applies the exchange relation in its
ε-expression; both signs are computed and must agree at every step.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from core.errors import IdentityFails
from core.pattern.engine import PatternRun
from core.quantum.algebra import QContext, QLaurentElement
from core.seed.matrix import ExchangeMatrix, check_direction, mutate_matrix
from core.settings import setting

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuantumSeed:
    matrix: ExchangeMatrix
    y: tuple[QLaurentElement, ...]

    @classmethod
    def initial(cls, matrix: ExchangeMatrix, ell: int | None = None, ctx: QContext | None = None) -> "QuantumSeed":
        ell = setting("quantum", "degree", 8) if ell is None else ell
        ctx = QContext.for_matrix(matrix) if ctx is None else ctx
        return cls(matrix, tuple(ctx.generator(i, ell) for i in range(1, matrix.rank + 1)))

    @property
    def ctx(self) -> QContext:
        return self.y[0].ctx


def exchange(seed: QuantumSeed, k: int, eps: int) -> tuple[QLaurentElement, ...]:
    """
    Y_i' = q^{ω_ki [ε b_ki]+} Y_i Y_k^{[ε b_ki]+} Π_{u=1..|b_ki|} (1 + q_k^{ε sgn(b_ki)(2u-1)} Y_k^ε)^{-sgn b_ki}
    for i ≠ k, and Y_k' = Y_k⁻¹.
    """
    ctx, matrix = seed.ctx, seed.matrix
    delta_k = matrix.delta[k - 1]
    yk = seed.y[k - 1]
    yk_eps = yk if eps > 0 else yk.inverse()
    out = []
    for i in range(1, matrix.rank + 1):
        yi = seed.y[i - 1]
        if i == k:
            out.append(yk.inverse())
            continue
        b_ki = matrix[k, i]
        if not b_ki:
            out.append(yi)
            continue
        p = max(eps * b_ki, 0)
        sgn = 1 if b_ki > 0 else -1
        value = (yi * yk**p).scale(ctx.q(Fraction(b_ki, delta_k) * p))
        for u in range(1, abs(b_ki) + 1):
            factor = 1 + yk_eps.scale(ctx.q(Fraction(eps * sgn * (2 * u - 1), delta_k)))
            value = value * factor ** (-sgn)
        out.append(value)
    return tuple(out)


def quantum_mutate(seed: QuantumSeed, k: int, eps: int = 1, check: bool = True) -> QuantumSeed:
    """Mutation at k (1-based); with `check`, the other sign must give the same seed."""
    check_direction(seed.matrix.rank, k)
    y = exchange(seed, k, eps)
    if check:
        other = exchange(seed, k, -eps)
        for i, (a, b) in enumerate(zip(y, other), start=1):
            diff = a - b
            if not diff.is_zero():
                e, c = diff.first_term()
                raise IdentityFails(f"mutation at {k} depends on ε: Y{i} differs at Y^{e} by {c.as_expr()}")
    return QuantumSeed(mutate_matrix(seed.matrix, k), y)


@dataclass(frozen=True, eq=False)
class QuantumRun:
    """Y_i(s) for s = 0..P along the word of a classical run."""

    run: PatternRun
    seeds: tuple[QuantumSeed, ...]
    trunc: int

    @property
    def ctx(self) -> QContext:
        return self.seeds[0].ctx

    def y(self, s: int, i: int) -> QLaurentElement:
        return self.seeds[s].y[i - 1]

    def y_tilde(self, s: int) -> QLaurentElement:
        """Ỹ_{k_s}(s), the argument of the s-th universal factor."""
        return self.y(s, self.run.direction(s))


def quantum_run(run: PatternRun, ell: int | None = None, check: bool = True) -> QuantumRun:
    ell = setting("quantum", "degree", 8) if ell is None else ell
    seed = QuantumSeed.initial(run.word.matrix, ell)
    seeds = [seed]
    for s in range(run.length):
        seed = quantum_mutate(seed, run.direction(s), run.signs[s], check)
        seeds.append(seed)
        logger.debug("quantum step %d at %d done", s, run.direction(s))
    return QuantumRun(run, tuple(seeds), ell)


def quantum_synchronicity(qrun: QuantumRun, nu) -> bool:
    """Y_{ν(i)}(P) = Y_i(0) for every i; raise IdentityFails otherwise."""
    last = qrun.seeds[-1]
    for i in range(1, qrun.run.rank + 1):
        image = last.y[nu[i - 1] - 1]
        diff = image - qrun.seeds[0].y[i - 1]
        if not diff.is_zero():
            e, c = diff.first_term()
            raise IdentityFails(f"Y{nu[i - 1]}({qrun.run.length}) differs from Y{i} at Y^{e} by {c.as_expr()}")
    logger.info("quantum Y-seed is %s-periodic after %d steps", nu, qrun.run.length)
    return True
