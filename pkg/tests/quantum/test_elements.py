"""Unit tests for quantum dilogarithm elements and their action."""

from fractions import Fraction

import pytest

from core.errors import IdentityFails
from core.quantum.algebra import QContext, QLaurentElement
from core.quantum.elements import (
    QDilogFactor,
    compare_actions,
    context_for,
    log_coefficient_limits,
    q_element_action,
    qpsi_action,
)
from core.scatter.diagram import RANK2_OMEGA

ELL = 6


def _closed_form_action(ctx: QContext, c, delta_k: int, m, trunc: int) -> QLaurentElement:
    """Y^m · Π_{u=1..|α|} (1 + q_k^{ε sgn(α)(2u-1)} Y^{c⁺})^{sgn α}, α = {δ_k c, m}_Ω."""
    eps = 1 if max(c) > 0 else -1
    c_plus = tuple(eps * x for x in c)
    alpha = int(delta_k * ctx.bracket(c, m))
    sign = 1 if alpha > 0 else -1
    x = ctx.monomial(c_plus, trunc)
    value = ctx.monomial(m, trunc)
    for u in range(1, abs(alpha) + 1):
        value = value * (1 + x.scale(ctx.q(Fraction(eps * sign * (2 * u - 1), delta_k)))) ** sign
    return value


def test_action_with_unit_bracket():
    """Test Ψ[e2](Y1) = Y1(1 + qY2) when {e2, e1} = 1."""
    f = QDilogFactor((0, 1))
    ctx = context_for(RANK2_OMEGA, [f])
    y1, y2 = ctx.generator(1, ELL), ctx.generator(2, ELL)
    assert qpsi_action(f, 1, y1) == y1 * (1 + y2.scale(ctx.q()))


def test_action_fixes_commuting_monomial():
    """Test that α = 0 leaves the target unchanged."""
    f = QDilogFactor((1, 2), Fraction(1, 2))
    ctx = context_for(RANK2_OMEGA, [f])
    target = ctx.monomial((2, 4), ELL)
    assert qpsi_action(f, 1, target) == target


def test_action_inverse():
    """Test Ψ_{a,b}[n]⁻¹(Ψ_{a,b}[n](x)) = x on a series."""
    f = QDilogFactor((1, 1), Fraction(1, 2), Fraction(-1, 2))
    ctx = context_for(RANK2_OMEGA, [f])
    x = ctx.generator(1, ELL) * (1 + ctx.generator(2, ELL))
    assert qpsi_action(f, -1, qpsi_action(f, 1, x)) == x
    assert q_element_action([f.inverse(), f], x) == x


@pytest.mark.parametrize("delta_k", [1, 2])
@pytest.mark.parametrize("c", [(1, 0), (0, 1), (1, 1), (0, -1), (-1, -2)])
@pytest.mark.parametrize("m", [(1, 0), (0, 1), (2, -1), (-1, 3)])
def test_action_matches_closed_form(delta_k, c, m):
    """Test Ψ_{1/δ_k}[c⁺]^ε(Y^m) = Y^m Π (1 + q_k^{ε sgn(α)(2u-1)} Y^{c⁺})^{sgn α}."""
    eps = 1 if max(c) > 0 else -1
    f = QDilogFactor(tuple(eps * x for x in c), Fraction(1, delta_k))
    ctx = context_for(RANK2_OMEGA, [f])
    expected = _closed_form_action(ctx, c, delta_k, m, ELL)
    assert qpsi_action(f, eps, ctx.monomial(m, ELL)) == expected


def test_products_act_right_factor_first():
    """Test that non-commuting orders are told apart."""
    lhs = [QDilogFactor((0, 1)), QDilogFactor((1, 0))]
    rhs = [QDilogFactor((1, 0)), QDilogFactor((0, 1))]
    ctx = context_for(RANK2_OMEGA, lhs)
    with pytest.raises(IdentityFails):
        compare_actions(lhs, rhs, ctx, ELL)
    compare_actions(lhs, [QDilogFactor((1, 0)), QDilogFactor((1, 1)), QDilogFactor((0, 1))], ctx, ELL)


def test_log_coefficient_limits():
    """Test (-1)^{j+1}q^{jb}/(j[ja]_q) → (-1)^{j+1}/(j² a)."""
    assert log_coefficient_limits(QDilogFactor((1, 0)), 4) == [1, Fraction(-1, 4), Fraction(1, 9), Fraction(-1, 16)]
    half = QDilogFactor((1, 1), Fraction(1, 2), Fraction(1, 2))
    assert log_coefficient_limits(half, 3) == [2, Fraction(-1, 2), Fraction(2, 9)]
    assert log_coefficient_limits(half.inverse(), 1) == [-2]


def test_factor_validation_and_format():
    """Test the bracket notation and rejected data."""
    assert str(QDilogFactor((1, 0))) == "[1,0]"
    assert str(QDilogFactor((0, 1), Fraction(1, 4))) == "[0,1]_{1/4}"
    assert str(QDilogFactor((1, 1), Fraction(1, 2), Fraction(-1, 2))) == "[1,1]_{1/2,-1/2}"
    assert str(QDilogFactor((1, 0)).inverse()) == "[1,0]^-1"
    assert QDilogFactor((1, 2), Fraction(1, 2)).classical().exponent == 2
    for n, a in [((0, 0), 1), ((-1, 1), 1), ((1, 0), 0)]:
        with pytest.raises(ValueError):
            QDilogFactor(n, a)
