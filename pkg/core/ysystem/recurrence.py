"""
ClusterDilog — Y-system Recurrence

Iterates the Y-system

    y_{a,a'}(u+1) y_{a,a'}(u-1) = Π_{b~a} (1 + y_{b,a'}(u)) / Π_{b'~a'} (1 + y_{a,b'}(u)⁻¹)

directly on positive reals, without the cluster engine. Periodicity with
period 2(h + h') and the dilogarithm sum hrr'·π²/6 over one sector and one
period give an independent numeric check of the Y-pattern results.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from core.dilog.functions import PI2_6, mod_rogers
from core.errors import PeriodMismatch, ToleranceExceeded
from core.settings import setting
from core.ysystem.bipartite import BipartiteQuiver, bipartite_quiver
from models.cdl_models import DIReport, format_pi2_multiple

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class YSystemTrajectory:
    """values[u, a-1, a'-1] = y_{a,a'}(u) for u = 0..steps."""

    quiver: BipartiteQuiver
    values: np.ndarray

    @property
    def steps(self) -> int:
        return self.values.shape[0] - 1

    def in_sector(self, u: int, a: int, ap: int) -> bool:
        """κ_{a,a'} (-1)^u = +1."""
        return self.quiver.kappa[self.quiver.vertex(a, ap) - 1] * (-1) ** u > 0

    def sector_sum(self, start: int = 0, length: int | None = None) -> float:
        """Σ L̃(y_{a,a'}(u)) over the even sector for start <= u < start + length."""
        length = self.quiver.full_period if length is None else length
        if start + length > self.steps + 1:
            raise IndexError(f"trajectory holds u <= {self.steps}, asked up to {start + length - 1}")
        total = 0.0
        for u in range(start, start + length):
            for a in range(1, self.quiver.r + 1):
                for ap in range(1, self.quiver.rp + 1):
                    if self.in_sector(u, a, ap):
                        total += mod_rogers(self.values[u, a - 1, ap - 1])
        return total

    def max_relative_gap(self, u: int, v: int, permute: bool = False) -> float:
        """max |y(u) - y'(v)| / y(u), y' being y(v) with (ω, ω') applied when permute is set."""
        other = self.values[v]
        if permute:
            rows = [w - 1 for w in self.quiver.x.omega]
            cols = [w - 1 for w in self.quiver.xp.omega]
            other = other[np.ix_(rows, cols)]
        return float(np.max(np.abs(self.values[u] - other) / self.values[u]))


def ysystem_recurrence(x, xp, initial=None, steps: int | None = None, kappa_first: int = 1) -> YSystemTrajectory:
    """
    Run the recurrence from initial = (y(0), y(1)), each of shape (r, r'); the
    default is all ones. Default length is one full period plus one step.
    """
    bq = bipartite_quiver(x, xp, kappa_first)
    r, rp = bq.r, bq.rp
    steps = bq.full_period + 1 if steps is None else steps
    if initial is None:
        initial = (np.ones((r, rp)), np.ones((r, rp)))
    y0, y1 = (np.asarray(v, dtype=float).reshape(r, rp) for v in initial)
    if (y0 <= 0).any() or (y1 <= 0).any():
        raise ValueError("Y-system initial data must be positive")
    values = np.empty((steps + 1, r, rp))
    values[0] = y0
    if steps >= 1:
        values[1] = y1
    for u in range(1, steps):
        current = values[u]
        nxt = np.empty((r, rp))
        for a in range(1, r + 1):
            for ap in range(1, rp + 1):
                num = math.prod(1.0 + current[b - 1, ap - 1] for b in bq.x.neighbours(a))
                den = math.prod(1.0 + 1.0 / current[a - 1, bp - 1] for bp in bq.xp.neighbours(ap))
                nxt[a - 1, ap - 1] = num / den / values[u - 1, a - 1, ap - 1]
        values[u + 1] = nxt
    return YSystemTrajectory(bq, values)


def verify_ysystem_di(
    x,
    xp,
    samples: int | None = None,
    tol: float | None = None,
    rng_seed: int = 0,
    kappa_first: int = 1,
) -> DIReport:
    """Random positive initial data: check both periodicities and the sector sum hrr'·π²/6."""
    samples = setting("dilog", "samples", 100) if samples is None else samples
    tol = setting("dilog", "tolerance", 1e-9) if tol is None else tol
    bq = bipartite_quiver(x, xp, kappa_first)
    shape = (bq.r, bq.rp)
    constant = bq.x.coxeter_number * bq.r * bq.rp
    expected = constant * PI2_6
    low = math.log(setting("dilog", "sample_low", 1e-2))
    high = math.log(setting("dilog", "sample_high", 1e2))
    rng = np.random.default_rng(rng_seed)
    worst = 0.0
    for _ in range(samples):
        initial = (np.exp(rng.uniform(low, high, size=shape)), np.exp(rng.uniform(low, high, size=shape)))
        traj = ysystem_recurrence(bq.x, bq.xp, initial, kappa_first=kappa_first)
        p = bq.full_period
        gap = max(traj.max_relative_gap(0, p), traj.max_relative_gap(1, p + 1),
                  traj.max_relative_gap(0, bq.half_period, permute=True))
        if gap > 1e-6:
            raise PeriodMismatch(f"Y-system ({bq.x.name}, {bq.xp.name}) misses its period by {gap:.2e}")
        worst = max(worst, abs(traj.sector_sum() - expected))
    passed = worst <= tol
    if not passed:
        raise ToleranceExceeded(f"Y-system sum residual {worst:.3e} > {tol:.1e}")
    logger.info("Y-system (%s, %s) identity holds on %d samples, worst residual %.2e",
                bq.x.name, bq.xp.name, samples, worst)
    return DIReport(
        kind="ysystem",
        constant=format_pi2_multiple(constant),
        expected=expected,
        max_residual=worst,
        rng_seed=rng_seed,
        samples=samples,
        tolerance=tol,
        passed=passed,
    )
