"""Unit tests for rank-2 consistent scattering diagrams."""

from fractions import Fraction

import pytest

from core.scatter.diagram import (
    build_rank2_csd,
    diagram_report,
    g_fan_embedding_check,
    g_fan_rays,
    is_consistent,
    normal_of_direction,
    outgoing_direction,
    path_ordered_product,
    wall_crossings_for_loop,
)


def _outgoing(d):
    return {w.normal: (w.ray, [(f.n, f.exponent) for f in w.factors]) for w in d.outgoing}


def test_outgoing_direction():
    """Test that the wall of n is supported on the ray of (δ1 n2, -δ2 n1)."""
    assert outgoing_direction((1, 1), (1, 3)) == (1, -3)
    assert outgoing_direction((1, 3), (1, 3)) == (1, -1)
    assert normal_of_direction((1, -3), (1, 3)) == (1, 1)
    assert normal_of_direction((2, -3), (1, 3)) == (1, 2)


def test_a2_walls():
    """Test that A2 has one outgoing wall [1,1] on the ray (1,-1)."""
    d = build_rank2_csd((1, 1), 6)
    assert _outgoing(d) == {(1, 1): ((1, -1), [((1, 1), Fraction(1))])}
    assert [w.normal for w in d.walls if w.incoming] == [(1, 0), (0, 1)]


def test_b2_walls():
    """Test the B2 outgoing walls [1,1]² and [1,2]."""
    d = build_rank2_csd((1, 2), 8)
    assert _outgoing(d) == {
        (1, 1): ((1, -2), [((1, 1), Fraction(2))]),
        (1, 2): ((1, -1), [((1, 2), Fraction(1))]),
    }


def test_g2_walls():
    """Test the four G2 outgoing walls and their supports."""
    d = build_rank2_csd((1, 3), 8)
    assert _outgoing(d) == {
        (1, 1): ((1, -3), [((1, 1), Fraction(3))]),
        (2, 3): ((1, -2), [((2, 3), Fraction(1))]),
        (1, 2): ((2, -3), [((1, 2), Fraction(3))]),
        (1, 3): ((1, -1), [((1, 3), Fraction(1))]),
    }


def test_affine_central_wall():
    """Test that (2,2) carries [1,1]⁴[2,2]² on the ray (1,-1) to degree 7."""
    d = build_rank2_csd((2, 2), 7)
    wall = d.wall_at((1, -1))
    assert wall.normal == (1, 1)
    assert [(f.n, f.exponent) for f in wall.factors] == [((1, 1), Fraction(4)), ((2, 2), Fraction(2))]
    assert d.wall_at((3, -2)).normal == (2, 3)


@pytest.mark.parametrize("delta, ell", [((1, 1), 6), ((1, 2), 8), ((1, 3), 8), ((2, 2), 5)])
def test_consistency(delta, ell):
    """Test that the loop product around the origin is the identity."""
    assert is_consistent(build_rank2_csd(delta, ell))


def test_loop_signs():
    """Test the crossings and intersection signs of the A2 loop."""
    d = build_rank2_csd((1, 1), 6)
    assert wall_crossings_for_loop(d) == [
        ((0, 1), 1),
        ((-1, 0), 1),
        ((0, -1), -1),
        ((1, -1), -1),
        ((1, 0), -1),
    ]
    assert d.crossing_sign((1, -1), orientation=-1) == 1


def test_single_crossing_is_wall_element():
    """Test that one crossing gives the wall element or its inverse."""
    d = build_rank2_csd((1, 2), 6)
    wall = d.wall_at((1, -2))
    g = wall.element(d.omega, d.trunc)
    assert path_ordered_product(d, [((1, -2), 1)]) == g
    assert path_ordered_product(d, [((1, -2), -1)]) == g.inverse()
    with pytest.raises(ValueError):
        path_ordered_product(d, [((1, -2), 0)])


def test_homotopic_paths_agree():
    """Test that both halves of the loop between two chambers give the same product."""
    d = build_rank2_csd((1, 2), 8)
    loop = wall_crossings_for_loop(d)
    back = [(r, -s) for r, s in reversed(loop[2:])]
    assert path_ordered_product(d, loop[:2]) == path_ordered_product(d, back)


def test_wall_at_rejects_empty_direction():
    """Test that a direction without a wall is reported."""
    d = build_rank2_csd((1, 1), 6)
    with pytest.raises(ValueError):
        d.wall_at((1, 1))
    with pytest.raises(ValueError):
        build_rank2_csd((0, 1), 4)


def test_diagram_report():
    """Test the report model of the A2 diagram."""
    report = diagram_report(build_rank2_csd((1, 1), 6))
    assert report.consistent
    assert report.delta == [1, 1]
    assert [w.element for w in report.walls] == ["[1,0]", "[0,1]", "[1,1]"]
    assert report.walls[2].ray == [1, -1]


def test_g_fan_rays_finite_type():
    """Test the G-fan rays of A2 and B2."""
    assert g_fan_rays((1, 1)) == {(1, 0), (0, 1), (-1, 0), (0, -1), (1, -1)}
    assert g_fan_rays((1, 2)) == {(1, 0), (0, 1), (-1, 0), (0, -1), (1, -1), (1, -2)}
    assert len(g_fan_rays((1, 3))) == 8


@pytest.mark.parametrize("delta", [(1, 1), (1, 2), (1, 3)])
def test_g_fan_embedding_finite_type(delta):
    """Test that the G-fan rays coincide with the wall supports in finite type."""
    assert g_fan_embedding_check(delta, ell=8)


def test_g_fan_embedding_affine():
    """Test that the affine G-fan misses the limiting ray (1,-1), which still carries a wall."""
    assert g_fan_embedding_check((2, 2), ell=6, max_steps=8)
    assert (1, -1) not in g_fan_rays((2, 2), max_steps=8)
    assert build_rank2_csd((2, 2), 6).wall_at((1, -1)).normal == (1, 1)
