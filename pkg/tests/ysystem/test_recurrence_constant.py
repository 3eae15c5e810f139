"""Unit tests for the plain Y-system recurrence and the constant Y-system."""

import math

import numpy as np
import pytest

from core.dilog.functions import PI2_6
from core.errors import NotSimplyLaced
from core.ysystem.constant import constant_ysystem_solve
from core.ysystem.recurrence import verify_ysystem_di, ysystem_recurrence


@pytest.mark.parametrize("x, xp, multiple", [("A1", "A1", 2), ("A2", "A1", 6), ("A1", "A2", 4)])
def test_sector_sums_small(x, xp, multiple):
    """Test Σ L̃ over one sector and one full period equals hrr'·π²/6."""
    initial = (np.full((1, 1), 0.7), np.full((1, 1), 2.5)) if (x, xp) == ("A1", "A1") else None
    traj = ysystem_recurrence(x, xp, initial)
    assert traj.sector_sum() == pytest.approx(multiple * PI2_6, abs=1e-10)


def test_a1_a1_values():
    """Test y(u+1) y(u-1) = 1 for (A1, A1)."""
    traj = ysystem_recurrence("A1", "A1", (np.array([[3.0]]), np.array([[0.5]])))
    assert traj.values[:5, 0, 0] == pytest.approx([3.0, 0.5, 1 / 3, 2.0, 3.0])


def test_full_and_half_period():
    """Test y(u + 2(h+h')) = y(u) and y(u + h + h') = y_{ω,ω'}(u) for (A3, A2)."""
    rng = np.random.default_rng(2)
    initial = (rng.uniform(0.1, 5.0, size=(3, 2)), rng.uniform(0.1, 5.0, size=(3, 2)))
    traj = ysystem_recurrence("A3", "A2", initial)
    assert traj.steps == 15
    assert traj.max_relative_gap(0, 14) < 1e-9
    assert traj.max_relative_gap(1, 15) < 1e-9
    assert traj.max_relative_gap(0, 7, permute=True) < 1e-9


@pytest.mark.parametrize("x, xp", [("A2", "A2"), ("A3", "A2"), ("D4", "A1"), ("A1", "D4"), ("E6", "A1")])
def test_verify_ysystem_di(x, xp):
    """Test the sector identity at random initial data."""
    report = verify_ysystem_di(x, xp, samples=5, tol=1e-8, rng_seed=1)
    assert report.passed and report.kind == "ysystem"


def test_recurrence_rejects_nonpositive():
    """Test that initial data must be positive."""
    with pytest.raises(ValueError):
        ysystem_recurrence("A2", "A1", (np.array([[1.0], [-1.0]]), np.ones((2, 1))))


def test_constant_a1_level_two():
    """Test y = 1 and Σ L̃ = π²/12 for A1 at level 2."""
    y, report = constant_ysystem_solve("A1", 2)
    assert y[0, 0] == pytest.approx(1.0, abs=1e-12)
    assert report.total == pytest.approx(math.pi**2 / 12, abs=1e-12)
    assert report.passed and report.constant == "1/2·π²/6"


def test_constant_a1_level_three():
    """Test y1 = y2 = (√5 - 1)/2 and Σ L̃ = 2π²/15 for A1 at level 3."""
    y, report = constant_ysystem_solve("A1", 3)
    assert y.ravel() == pytest.approx([(math.sqrt(5) - 1) / 2] * 2, abs=1e-12)
    assert report.total == pytest.approx(2 * math.pi**2 / 15, abs=1e-11)
    assert report.passed


def test_constant_a2_level_two():
    """Test Σ L̃ = π²/5 for A2 at level 2."""
    _, report = constant_ysystem_solve("A2", 2)
    assert report.total == pytest.approx(math.pi**2 / 5, abs=1e-11)
    assert report.passed


@pytest.mark.parametrize("name, level", [("A3", 4), ("A4", 2), ("D4", 3), ("D5", 2), ("E6", 2), ("E7", 2)])
def test_constant_identity(name, level):
    """Test Σ L̃(y) = r(ℓ-1)h/(h+ℓ)·π²/6 for further types and levels."""
    y, report = constant_ysystem_solve(name, level)
    assert (y > 0).all()
    assert report.residual <= 1e-13
    assert report.passed


def test_constant_rejects_bad_input():
    """Test level and type validation."""
    with pytest.raises(ValueError):
        constant_ysystem_solve("A2", 1)
    with pytest.raises(NotSimplyLaced):
        constant_ysystem_solve("G2", 2)
