"""Unit tests for the truncated q-commutative Laurent algebra and the q-series."""

from fractions import Fraction

import pytest

from core.errors import MixedContext, NonPositiveArgument, NonUnit, TruncationLoss
from core.quantum.algebra import QContext, e_q_series, psi_q_power, psi_q_series
from core.quantum.identities import two_generator_context
from core.scatter.diagram import RANK2_OMEGA

ELL = 6


@pytest.fixture
def ctx():
    return QContext.of(RANK2_OMEGA)


def test_normalized_product(ctx):
    """Test Y^{e1} Y^{e2} = q⁻¹ Y^{(1,1)} and Y1Y2 = q⁻² Y2Y1."""
    y1, y2 = ctx.generator(1, ELL), ctx.generator(2, ELL)
    q = ctx.q()
    assert y1 * y2 == ctx.monomial((1, 1), ELL, 1 / q)
    assert y1 * y2 == (y2 * y1).scale(q**-2)
    assert y1 * y2 != y2 * y1


def test_associativity_of_monomials():
    """Test (Y^{n1}Y^{n2})Y^{n3} = Y^{n1}(Y^{n2}Y^{n3}) exactly."""
    ctx = QContext.of([[0, Fraction(1, 2), 1], [Fraction(-1, 2), 0, 2], [-1, -2, 0]])
    a, b, c = (ctx.monomial(n, ELL) for n in [(1, -2, 0), (0, 3, 1), (2, 1, -1)])
    assert (a * b) * c == a * (b * c)
    assert ctx.d == 2


def test_unit_inverse(ctx):
    """Test (1 + qY1)(1 + qY1)⁻¹ = 1 and the inverse of a shifted unit."""
    q = ctx.q()
    u = 1 + ctx.generator(1, ELL).scale(q)
    assert (u * u.inverse()).is_one()
    v = ctx.monomial((-1, 2), ELL) * (1 + ctx.generator(2, ELL) + ctx.monomial((1, 1), ELL, q))
    assert (v.inverse() * v).is_one()
    assert (v * v.inverse()).is_one()
    assert v.inverse().shift == (1, -2)


def test_negative_power(ctx):
    """Test x⁻² x² = 1."""
    x = 1 + ctx.generator(2, ELL)
    assert (x**-2 * x**2).is_one()


def test_non_unit(ctx):
    """Test that elements without a leading constant are not inverted."""
    with pytest.raises(NonUnit):
        (ctx.generator(1, ELL) + ctx.generator(2, ELL)).inverse()
    with pytest.raises(NonUnit):
        ctx.zero(ELL).inverse()


def test_shift_alignment(ctx):
    """Test that Y1⁻¹ + 1 keeps the minimal shift and the full window."""
    x = ctx.generator(1, ELL).inverse() + 1
    assert x.shift == (-1, 0)
    assert x.full_terms() == {(-1, 0): 1, (0, 0): 1}
    assert x.trunc == ELL


def test_window(ctx):
    """Test that coefficients outside the window are refused."""
    y1 = ctx.generator(1, 2)
    assert y1.coefficient((3, 0)) == 0
    assert y1.in_window((3, 0))
    assert not y1.in_window((4, 0))
    with pytest.raises(TruncationLoss):
        y1.coefficient((4, 0))


def test_mixed_context(ctx):
    """Test that elements of different tori are not combined."""
    other = QContext.of([[0, 1], [-1, 0]])
    with pytest.raises(MixedContext):
        ctx.generator(1, ELL) + other.generator(1, ELL)


def test_specialize(ctx):
    """Test the q = 1 values of (1 + qY1)²."""
    x = (1 + ctx.generator(1, ELL).scale(ctx.q())) ** 2
    assert x.specialize() == {(0, 0): 1, (1, 0): 2, (2, 0): 1}


def test_psi_leading_coefficients(ctx):
    """Test that Ψ_q(x) starts with 1 + x/(q - q⁻¹)."""
    q = ctx.q()
    psi = psi_q_series(ctx.generator(1, ELL), ELL)
    assert psi.coefficient((0, 0)) == 1
    assert psi.coefficient((1, 0)) == 1 / (q - 1 / q)


def test_psi_inverse_series(ctx):
    """Test Ψ_q(x)⁻¹ = Π (1 + q^{2k-1} x) against the inverse of the series."""
    x = ctx.generator(1, ELL) + ctx.generator(2, ELL)
    assert psi_q_power(x, -1, ELL) == psi_q_series(x, ELL).inverse()
    assert (psi_q_power(x, -1, ELL) * psi_q_power(x, 1, ELL)).is_one()


def test_e_q_of_q_commuting_sum():
    """Test e_q(b)e_q(a) = e_q(a + b) for ba = q·ab, and that commuting generators break it."""
    ctx = two_generator_context()
    a, b = ctx.generator(1, ELL), ctx.generator(2, ELL)
    assert e_q_series(b, ELL) * e_q_series(a, ELL) == e_q_series(a + b, ELL)

    flat = QContext.of([[0, 0], [0, 0]])
    x, y = flat.generator(1, ELL), flat.generator(2, ELL)
    assert e_q_series(x, ELL) * e_q_series(y, ELL) != e_q_series(x + y, ELL)


def test_non_positive_argument(ctx):
    """Test that Ψ_q needs an argument with positive exponents only."""
    with pytest.raises(NonPositiveArgument):
        psi_q_series(ctx.generator(1, ELL).inverse(), ELL)
    with pytest.raises(NonPositiveArgument):
        psi_q_series(1 + ctx.generator(1, ELL), ELL)
    with pytest.raises(ValueError):
        psi_q_power(ctx.generator(1, ELL), 2, ELL)
