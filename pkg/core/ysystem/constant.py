"""
ClusterDilog — Constant Y-system

The level-ℓ constant Y-system of a simply-laced X,

    (y_m^a)² = Π_{b~a} (1 + y_m^b) / ((1 + 1/y_{m-1}^a)(1 + 1/y_{m+1}^a)),  m = 1..ℓ-1,

with 1/y_0 = 1/y_ℓ = 0, has a unique positive solution whose dilogarithm sum
is r(ℓ-1)h/(h+ℓ)·π²/6. The solver iterates in log space with damping and
finishes with Newton steps on the same equations.
"""

import logging
from fractions import Fraction

import numpy as np

from core.dilog.functions import PI2_6, mod_rogers
from core.errors import NoConvergence
from core.settings import setting
from core.ysystem.bipartite import as_dynkin, require_simply_laced
from models.cdl_models import ConstantYSystemReport, format_pi2_multiple

logger = logging.getLogger(__name__)

NEWTON_STEPS = 50


def _log1p_exp(z: np.ndarray) -> np.ndarray:
    return np.logaddexp(0.0, z)


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return np.exp(-np.logaddexp(0.0, -z))


def _neighbour_matrix(t) -> np.ndarray:
    adj = np.zeros((t.rank, t.rank))
    for a, b in t.edges:
        adj[a - 1, b - 1] = adj[b - 1, a - 1] = 1.0
    return adj


def _level_shifts(levels: int) -> tuple[np.ndarray, np.ndarray]:
    """Shift matrices picking z_{m-1} and z_{m+1}; boundary rows stay zero."""
    down = np.eye(levels, k=-1)
    up = np.eye(levels, k=1)
    return down, up


def residual(z: np.ndarray, adj: np.ndarray) -> np.ndarray:
    """2 z - Σ_b log(1 + y_b) + log(1 + 1/y_{m-1}) + log(1 + 1/y_{m+1}) in z = log y, shape (r, ℓ-1)."""
    levels = z.shape[1]
    down, up = _level_shifts(levels)
    out = 2.0 * z - adj @ _log1p_exp(z)
    mask_down = down.sum(axis=1) > 0
    mask_up = up.sum(axis=1) > 0
    below = z @ down.T
    above = z @ up.T
    out += np.where(mask_down, _log1p_exp(-below), 0.0)
    out += np.where(mask_up, _log1p_exp(-above), 0.0)
    return out


def _jacobian(z: np.ndarray, adj: np.ndarray) -> np.ndarray:
    r, levels = z.shape
    size = r * levels
    jac = np.zeros((size, size))

    def idx(a: int, m: int) -> int:
        return a * levels + m

    sig = _sigmoid(z)
    sig_neg = _sigmoid(-z)
    for a in range(r):
        for m in range(levels):
            row = idx(a, m)
            jac[row, row] = 2.0
            for b in range(r):
                if adj[a, b]:
                    jac[row, idx(b, m)] -= sig[b, m]
            for mm in (m - 1, m + 1):
                if 0 <= mm < levels:
                    jac[row, idx(a, mm)] -= sig_neg[a, mm]
    return jac


def constant_ysystem_solve(
    x,
    level: int,
    max_iterations: int | None = None,
    tol: float | None = None,
    damping: float | None = None,
) -> tuple[np.ndarray, ConstantYSystemReport]:
    """Positive solution y[a-1, m-1] and the comparison of Σ L̃(y) with r(ℓ-1)h/(h+ℓ)·π²/6."""
    t = as_dynkin(x)
    require_simply_laced(t)
    if level < 2:
        raise ValueError(f"level must be at least 2, got {level}")
    max_iterations = setting("ysystem", "solver_max_iterations", 20000) if max_iterations is None else max_iterations
    tol = setting("ysystem", "solver_tolerance", 1e-13) if tol is None else tol
    damping = setting("ysystem", "damping", 0.5) if damping is None else damping

    adj = _neighbour_matrix(t)
    z = np.zeros((t.rank, level - 1))
    switch = max(tol, 1e-6)
    iterations = 0
    res = float(np.max(np.abs(residual(z, adj))))
    best = res
    while res > switch and iterations < max_iterations:
        # 2 z = rhs(z), solved for z and relaxed
        candidate = (1.0 - damping) * z + damping * (z - 0.5 * residual(z, adj))
        cand_res = float(np.max(np.abs(residual(candidate, adj))))
        if not np.isfinite(cand_res) or cand_res > 10.0 * best:
            break
        z, res = candidate, cand_res
        best = min(best, res)
        iterations += 1
    for _ in range(NEWTON_STEPS):
        if res <= tol:
            break
        step = np.linalg.solve(_jacobian(z, adj), residual(z, adj).ravel()).reshape(z.shape)
        scale = 1.0
        # backtrack until the residual drops
        for _ in range(30):
            candidate = z - scale * step
            cand_res = float(np.max(np.abs(residual(candidate, adj))))
            if np.isfinite(cand_res) and cand_res < res:
                break
            scale *= 0.5
        else:
            break
        z, res = candidate, cand_res
        iterations += 1
    if not np.isfinite(res) or res > tol:
        raise NoConvergence(f"constant Y-system {t.name} level {level}: residual {res:.2e} after {iterations} steps")

    y = np.exp(z)
    total = float(sum(mod_rogers(v) for v in y.ravel()))
    h = t.coxeter_number
    constant = Fraction(t.rank * (level - 1) * h, h + level)
    expected = float(constant) * PI2_6
    report = ConstantYSystemReport(
        dynkin=t.name,
        level=level,
        iterations=iterations,
        residual=res,
        total=total,
        expected=expected,
        constant=format_pi2_multiple(constant),
        passed=abs(total - expected) <= setting("dilog", "tolerance", 1e-9),
    )
    logger.info("constant Y-system %s level %d: Σ L̃ = %.12f, expected %s, %d iterations",
                t.name, level, total, report.constant, iterations)
    return y, report
