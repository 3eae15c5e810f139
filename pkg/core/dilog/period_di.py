"""
ClusterDilog — Numeric Dilogarithm Identities of a Period

For a ν-periodic run the y-variables y_{k_s}(s) satisfy three equivalent
identities: Σ δ L̃(y) = N₋·π²/6, Σ δ L̃(1/y) = N₊·π²/6 and the signed form
Σ ε δ L̃(y^ε) = 0. They are checked at log-uniform random positive points.
"""

import logging
import math

import numpy as np

from core.dilog.functions import PI2_6, mod_rogers
from core.errors import PeriodMismatch, ToleranceExceeded
from core.pattern.engine import PatternRun, di_weights
from core.pattern.periodicity import detect_period
from core.pattern.separation import y_at_step
from core.seed.matrix import Permutation
from core.settings import setting
from models.cdl_models import DIReport, format_pi2_multiple

logger = logging.getLogger(__name__)


def sample_points(n: int, samples: int, rng_seed: int) -> np.ndarray:
    """samples × n points, log-uniform in [sample_low, sample_high] per coordinate."""
    low = math.log(setting("dilog", "sample_low", 1e-2))
    high = math.log(setting("dilog", "sample_high", 1e2))
    rng = np.random.default_rng(rng_seed)
    return np.exp(rng.uniform(low, high, size=(samples, n)))


def step_values(run: PatternRun, point) -> list[float]:
    """y_{k_s}(s) at a positive point, for s = 0..P-1."""
    return [y_at_step(run, s).eval_positive(point) for s in range(run.length)]


def di_sums(run: PatternRun, values: list[float]) -> tuple[float, float, float]:
    """(Σ δ L̃(y), Σ δ L̃(1/y), Σ ε δ L̃(y^ε)) for one set of step values."""
    first = second = signed = 0.0
    for s, y in enumerate(values):
        w = run.weight(s)
        eps = run.signs[s]
        forward = mod_rogers(y)
        backward = mod_rogers(1.0 / y)
        first += w * forward
        second += w * backward
        signed += eps * w * (forward if eps > 0 else backward)
    return first, second, signed


def verify_period_di(
    run: PatternRun,
    nu: Permutation,
    samples: int | None = None,
    tol: float | None = None,
    rng_seed: int = 0,
    strict: bool = True,
) -> DIReport:
    """
    Check all three identity forms at `samples` random points. With strict=True a
    residual above tol raises ToleranceExceeded naming the worst point.
    """
    samples = setting("dilog", "samples", 100) if samples is None else samples
    tol = setting("dilog", "tolerance", 1e-9) if tol is None else tol
    detected = detect_period(run)
    if detected is None or tuple(detected) != tuple(nu):
        raise PeriodMismatch(f"run is not {tuple(nu)}-periodic (detected {detected})")

    weights = di_weights(run)
    expected = (weights.n_minus * PI2_6, weights.n_plus * PI2_6, 0.0)
    worst = {"DI1": 0.0, "DI2": 0.0, "DI3": 0.0}
    worst_point, max_residual = None, 0.0
    for point in sample_points(run.rank, samples, rng_seed):
        sums = di_sums(run, step_values(run, point))
        residuals = [abs(value - target) for value, target in zip(sums, expected)]
        for name, residual in zip(worst, residuals):
            worst[name] = max(worst[name], residual)
        if max(residuals) > max_residual:
            worst_point, max_residual = point, max(residuals)
    passed = max_residual <= tol
    report = DIReport(
        kind="period",
        n_plus=weights.n_plus,
        n_minus=weights.n_minus,
        constant=format_pi2_multiple(weights.n_minus),
        expected=expected[0],
        max_residual=max_residual,
        residuals=worst,
        rng_seed=rng_seed,
        samples=samples,
        tolerance=tol,
        passed=passed,
    )
    if not passed and strict:
        raise ToleranceExceeded(
            f"residual {max_residual:.3e} > {tol:.1e} at y = {np.round(worst_point, 6).tolist()}"
        )
    logger.info("period DI verified on %d samples, N+ = %d, N- = %d, worst residual %.2e",
                samples, weights.n_plus, weights.n_minus, max_residual)
    return report


def tropical_limit_constant(run: PatternRun, t: float = 1e-6) -> int:
    """
    Weighted count of the y_{k_s}(s) that diverge at y = (t, ..., t). As t -> 0 the
    diverging terms each contribute π²/6 to Σ δ L̃(y), so the count equals N₋.
    """
    if not 0.0 < t < 1.0:
        raise ValueError(f"t must lie in (0, 1), got {t}")
    point = np.full(run.rank, t)
    threshold = t**-0.5
    return sum(run.weight(s) for s, y in enumerate(step_values(run, point)) if y > threshold)
