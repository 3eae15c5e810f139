"""
ClusterDilog — Periodicity and Dualities

Detects ν-periodicity of a run from its last C-matrix, cross-checking the
G-matrices, F-polynomials and exchange matrices, verifies the C/G dualities at
every step and reruns a word on the principal extension.
"""

import logging
from math import lcm

import numpy as np

from core.errors import DualityViolation, PeriodMismatch
from core.pattern.engine import MutationWord, PatternRun, run_pattern
from core.seed.matrix import (
    Permutation,
    permute_columns,
    permute_items,
    permute_matrix,
    principal_extension,
)
from models.cdl_models import DualityReport

logger = logging.getLogger(__name__)


def permutation_of(c: np.ndarray) -> Permutation | None:
    """ν with c = ν·I, i.e. column j of c is e_{ν⁻¹(j)}; None if c is no permutation matrix."""
    n = c.shape[0]
    if not ((c == 0) | (c == 1)).all():
        return None
    if not (c.sum(axis=0) == 1).all() or not (c.sum(axis=1) == 1).all():
        return None
    nu = [0] * n
    for j in range(n):
        r = int(np.argmax(c[:, j]))
        nu[r] = j + 1
    return tuple(nu)


def detect_period(run: PatternRun) -> Permutation | None:
    """
    ν with C(P) = ν C(0) when it exists. The seed periodicity this certifies is
    cross-checked on G(P), F(P) and B(P); a mismatch means the engine is wrong.
    """
    nu = permutation_of(run.c[-1])
    if nu is None:
        return None
    identity = np.eye(run.rank, dtype=np.int64)
    if not np.array_equal(run.g[-1], permute_columns(identity, nu)):
        raise PeriodMismatch(f"C({run.length}) is {nu}-periodic but G({run.length}) is not")
    if any(p != 1 for p in run.f[-1]):
        raise PeriodMismatch(f"C({run.length}) is {nu}-periodic but some F({run.length}) differs from 1")
    if not np.array_equal(run.b[-1], permute_matrix(run.b[0], nu)):
        raise PeriodMismatch(f"C({run.length}) is {nu}-periodic but B({run.length}) is not")
    if permute_items(run.delta, nu) != run.delta:
        raise PeriodMismatch(f"period {nu} is not compatible with δ = {run.delta}")
    logger.debug("run of length %d is periodic with ν = %s", run.length, nu)
    return nu


def verify_dualities(run: PatternRun) -> DualityReport:
    """
    At every seed: G B_s = B C_s, D⁻¹ Gᵀ D C = I, D B_s = Cᵀ (D B) C and
    |det C| = |det G| = 1, with D = diag(1/δ) scaled to integers.
    """
    scale = lcm(*run.delta)
    d = np.diag([scale // v for v in run.delta]).astype(np.int64)
    b0 = run.b[0]
    for s in range(run.length + 1):
        b, c, g = run.b[s], run.c[s], run.g[s]
        if not np.array_equal(g @ b, b0 @ c):
            raise DualityViolation(f"G B = B0 C fails at step {s}")
        if not np.array_equal(g.T @ d @ c, d):
            raise DualityViolation(f"D⁻¹ Gᵀ D C = I fails at step {s}")
        if not np.array_equal(d @ b, c.T @ d @ b0 @ c):
            raise DualityViolation(f"D B = Cᵀ D B0 C fails at step {s}")
        if abs(round(np.linalg.det(c))) != 1 or abs(round(np.linalg.det(g))) != 1:
            raise DualityViolation(f"C or G is not unimodular at step {s}")
    logger.info("dualities hold at all %d seeds", run.length + 1)
    return DualityReport(rank=run.rank, steps_checked=run.length + 1)


def principal_run(run: PatternRun) -> PatternRun:
    """The same word on [[B, -I], [I, O]]."""
    return run_pattern(MutationWord.of(principal_extension(run.word.matrix), run.word.dirs))
