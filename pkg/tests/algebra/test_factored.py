"""Unit tests for factored subtraction-free values."""

import math

import pytest

from core.algebra.factored import ATOMS, FactoredSF
from core.algebra.polynomial import canonical_key, poly_ring
from core.errors import Overflow


@pytest.fixture
def y():
    return poly_ring(2).gens


def test_tropicalize_atom_is_one(y):
    """Test that an F-polynomial atom tropicalizes to the trivial monomial."""
    y1, y2 = y
    assert FactoredSF.from_poly(1 + y2 + y1 * y2).tropicalize() == (0, 0)


def test_tropicalize_monomial_identity():
    """Test that a monomial tropicalizes to itself."""
    assert FactoredSF.from_monomial((2, -1)).tropicalize() == (2, -1)


def test_tropicalize_is_multiplicative(y):
    """Test trop(f*g) == trop(f) + trop(g) on factored values."""
    y1, y2 = y
    f = FactoredSF.from_monomial((-1, 0)) * FactoredSF.from_poly(1 + y2 + y1 * y2)
    g = FactoredSF.from_monomial((0, 1)) * FactoredSF.from_poly(1 + y1)
    prod = (f * g).tropicalize()
    assert prod == tuple(a + b for a, b in zip(f.tropicalize(), g.tropicalize()))


def test_from_poly_extracts_monomial_content(y):
    """Test that monomial content moves into the monomial part."""
    y1, y2 = y
    value = FactoredSF.from_poly(y2 + y1 * y2)
    assert value.monomial == (0, 1)
    assert len(value.factors) == 1


@pytest.mark.parametrize(
    "build, expected",
    [
        (lambda y1, y2: FactoredSF.from_monomial((0, 1)) * FactoredSF.from_poly(1 + y1), 2.0),
        (lambda y1, y2: FactoredSF.from_monomial((-1, 0)) * FactoredSF.from_poly(1 + y2 + y1 * y2), 3.0),
        (lambda y1, y2: FactoredSF.from_monomial((-1, -2)) * FactoredSF.from_poly(1 + y2, 2), 4.0),
    ],
)
def test_eval_positive_at_one(y, build, expected):
    """Test evaluation of printed y-variables at y = (1, 1)."""
    y1, y2 = y
    assert build(y1, y2).eval_positive([1.0, 1.0]) == pytest.approx(expected, rel=1e-12)


def test_eval_positive_is_multiplicative(y):
    """Test eval(f*g) == eval(f)*eval(g)."""
    y1, y2 = y
    f = FactoredSF.from_monomial((1, -1)) * FactoredSF.from_poly(1 + 2 * y2 + y2**2 + y1 * y2**2)
    g = FactoredSF.from_poly(1 + y1, -3)
    point = [0.37, 12.5]
    assert (f * g).eval_positive(point) == pytest.approx(
        f.eval_positive(point) * g.eval_positive(point), rel=1e-10
    )


def test_eval_positive_overflow():
    """Test that an out-of-range value raises Overflow."""
    with pytest.raises(Overflow):
        FactoredSF.from_monomial((400, 0)).eval_positive([1e10, 1.0])


def test_eval_positive_underflow():
    """Test that a value below the smallest positive double raises Overflow instead of returning 0."""
    with pytest.raises(Overflow):
        FactoredSF.from_monomial((-400, 0)).eval_positive([10.0, 1.0])
    assert FactoredSF.from_monomial((-300, 0)).eval_positive([10.0, 1.0]) > 0


def test_atom_interning_shares_identity(y):
    """Test that structurally equal polynomials intern to one atom."""
    y1, y2 = y
    a = ATOMS.intern(1 + y1 * y2 + y2)
    b = ATOMS.intern(y2 + 1 + y2 * y1)
    assert a == b
    assert canonical_key(ATOMS.poly(a)) == canonical_key(1 + y2 + y1 * y2)


def test_refine_splits_products(y):
    """Test that refine rewrites a product atom into irreducible atoms."""
    y1, y2 = y
    value = FactoredSF.from_poly((1 + y1) * (1 + y2) ** 2).refine()
    exps = sorted(e for _, e in value.factors)
    assert exps == [1, 2]
    assert value.eval_positive([2.0, 3.0]) == pytest.approx(3.0 * 16.0)


def test_one_plus_matches_evaluation(y):
    """Test 1 + y1^-1 (1+y2+y1y2) as a factored value."""
    y1, y2 = y
    f = FactoredSF.from_monomial((-1, 0)) * FactoredSF.from_poly(1 + y2 + y1 * y2)
    g = f.one_plus()
    point = [0.5, 2.0]
    assert g.eval_positive(point) == pytest.approx(1 + f.eval_positive(point), rel=1e-12)
    assert g.monomial == (-1, 0)


def test_expand_series_of_inverse_atom(y):
    """Test the series expansion of (1+y1)^-1."""
    y1, _ = y
    mono, series = FactoredSF.from_poly(1 + y1, -1).expand_series(3)
    assert mono == (0, 0)
    assert series == 1 - y1 + y1**2 - y1**3


def test_json_round_trip(y):
    """Test that FactoredSF survives JSON serialisation."""
    y1, y2 = y
    f = FactoredSF.from_monomial((-1, 2)) * FactoredSF.from_poly(1 + y2, 3)
    assert FactoredSF.from_json(f.to_json()) == f
    assert math.isclose(f.eval_positive([1.0, 1.0]), 8.0)
