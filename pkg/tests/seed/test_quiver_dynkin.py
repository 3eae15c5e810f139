"""Unit tests for quivers, Y-seeds and finite-type classification."""

import numpy as np
import pytest

from core.algebra.factored import FactoredSF
from core.algebra.polynomial import poly_ring
from core.errors import Decomposable
from core.seed.dynkin import DynkinType, cartan_counterpart, classify_finite_type, dynkin_type
from core.seed.matrix import ExchangeMatrix
from core.seed.quiver import Quiver, matrix_from_quiver, mutate_quiver, quiver_from_matrix
from core.seed.yseed import YSeed, mutate_yseed, sn_act

QB1_ARROWS = [(1, 2, 1), (3, 2, 1), (5, 4, 1), (5, 6, 1), (4, 1, 1), (2, 5, 1), (6, 3, 1)]


def test_bipartite_mutation_gives_opposite_quiver():
    """Test that μ2μ4μ6 turns the A3 x A2 square product quiver into its opposite."""
    q = Quiver.from_arrows(6, QB1_ARROWS)
    for k in (2, 4, 6):
        q = mutate_quiver(q, k)
    assert q == Quiver.from_arrows(6, QB1_ARROWS).opposite()


def test_quiver_matrix_round_trip():
    """Test that quiver and matrix conversions invert each other."""
    q = Quiver.from_arrows(6, QB1_ARROWS)
    b = matrix_from_quiver(q)
    assert quiver_from_matrix(b) == q
    assert matrix_from_quiver(quiver_from_matrix(b)) == b
    assert Quiver.from_json(q.to_json(), 6) == q


def test_quiver_rejects_two_cycles_and_loops():
    """Test that loops and 2-cycles are rejected."""
    with pytest.raises(ValueError):
        Quiver.from_arrows(2, [(1, 2, 1), (2, 1, 1)])
    with pytest.raises(ValueError):
        Quiver.from_arrows(2, [(1, 1, 1)])


def test_skew_symmetrizable_matrix_has_no_quiver():
    """Test that quivers need a skew-symmetric matrix."""
    with pytest.raises(ValueError):
        quiver_from_matrix(ExchangeMatrix.from_rows([[0, -1], [2, 0]]))


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[0, -1], [1, 0]], "A2"),
        ([[0, -1], [2, 0]], "B2"),
        ([[0, -1], [3, 0]], "G2"),
        ([[0, 1, 0], [-1, 0, -1], [0, 1, 0]], "A3"),
        ([[0, 1, 1, 1], [-1, 0, 0, 0], [-1, 0, 0, 0], [-1, 0, 0, 0]], "D4"),
        ([[0, 1, 0], [-1, 0, 1], [0, -2, 0]], "B3"),
        ([[0, 1, 0], [-1, 0, 2], [0, -1, 0]], "C3"),
        ([[0, 1, 0, 0], [-1, 0, 1, 0], [0, -2, 0, 1], [0, 0, -1, 0]], "F4"),
    ],
)
def test_classify_finite_type(rows, expected):
    """Test Cartan counterpart lookup on finite-type matrices."""
    found = classify_finite_type(ExchangeMatrix.from_rows(rows))
    assert found is not None and found.name == expected


def test_classify_e6_with_shuffled_labels():
    """Test that E6 is found regardless of vertex labels."""
    t = dynkin_type("E", 6)
    perm = [4, 0, 5, 2, 1, 3]
    b = np.zeros((6, 6), dtype=int)
    for i, j in t.edges:
        b[perm[i - 1], perm[j - 1]] = 1
        b[perm[j - 1], perm[i - 1]] = -1
    assert classify_finite_type(ExchangeMatrix.from_rows(b)) == t


def test_classify_affine_is_absent():
    """Test that the affine A1 matrix is not of finite type."""
    assert classify_finite_type(ExchangeMatrix.from_rows([[0, -2], [2, 0]])) is None
    cycle = [[0, 1, -1], [-1, 0, 1], [1, -1, 0]]
    assert classify_finite_type(ExchangeMatrix.from_rows(cycle)) is None


def test_classify_decomposable_raises():
    """Test that a block-diagonal matrix raises Decomposable."""
    with pytest.raises(Decomposable):
        classify_finite_type(ExchangeMatrix.from_rows([[0, 0], [0, 0]]))


def test_cartan_counterpart_g2():
    """Test a_ii = 2 and a_ij = -|b_ij|."""
    a = cartan_counterpart(ExchangeMatrix.from_rows([[0, -1], [3, 0]]))
    assert a.tolist() == [[2, -1], [-3, 2]]
    assert (a == DynkinType("G", 2).cartan_matrix()).all()


@pytest.mark.parametrize(
    "name, h",
    [("A1", 2), ("A5", 6), ("B3", 6), ("C4", 8), ("D4", 6), ("D7", 12),
     ("E6", 12), ("E7", 18), ("E8", 30), ("F4", 12), ("G2", 6)],
)
def test_coxeter_numbers(name, h):
    """Test the Coxeter number table."""
    assert DynkinType.parse(name).coxeter_number == h


@pytest.mark.parametrize("name", ["A4", "D4", "D5", "E6", "E7", "E8"])
def test_omega_is_involution(name):
    """Test that the diagram automorphism is an involution preserving edges."""
    t = DynkinType.parse(name)
    w = t.omega
    assert all(w[w[a - 1] - 1] == a for a in range(1, t.rank + 1))
    edges = {frozenset(e) for e in t.edges}
    assert {frozenset((w[i - 1], w[j - 1])) for i, j in t.edges} == edges


def test_omega_values():
    """Test ω on A, odd D and E6."""
    assert DynkinType.parse("A3").omega == (3, 2, 1)
    assert DynkinType.parse("D5").omega == (1, 2, 3, 5, 4)
    assert DynkinType.parse("D4").omega == (1, 2, 3, 4)
    assert DynkinType.parse("E6").omega == (6, 5, 3, 4, 2, 1)


def test_invalid_dynkin_types():
    """Test that impossible types are rejected."""
    for family, rank in (("D", 3), ("E", 9), ("G", 3), ("H", 3)):
        with pytest.raises(ValueError):
            dynkin_type(family, rank)


def test_sn_act_on_a2_seed():
    """Test that τ12 swaps y1, y2 and transposes B."""
    seed = YSeed.initial(ExchangeMatrix.from_rows([[0, -1], [1, 0]]))
    moved = sn_act(seed, (2, 1))
    assert moved.y == (seed.y[1], seed.y[0])
    assert moved.matrix.entries == ((0, 1), (-1, 0))
    assert sn_act(seed, (1, 2)) == seed


def test_sn_act_compatible_with_mutation_on_b2():
    """Test μ_ν(k)(νΣ) = ν(μ_k Σ) for B2 and ν = τ12."""
    seed = YSeed.initial(ExchangeMatrix.from_rows([[0, -1], [2, 0]]))
    nu = (2, 1)
    for k in (1, 2):
        left = mutate_yseed(sn_act(seed, nu), nu[k - 1])
        right = sn_act(mutate_yseed(seed, k), nu)
        assert left == right


def test_yseed_mutation_matches_separation():
    """Test two A2 mutations give y1(2) = y1^-1 (1 + y2 + y1 y2)."""
    y1, y2 = poly_ring(2).gens
    seed = YSeed.initial(ExchangeMatrix.from_rows([[0, -1], [1, 0]]))
    seed = mutate_yseed(mutate_yseed(seed, 1), 2)
    expected = FactoredSF.from_monomial((-1, 0)) * FactoredSF.from_poly(1 + y2 + y1 * y2)
    assert seed.y[0].eval_positive([0.3, 1.7]) == pytest.approx(expected.eval_positive([0.3, 1.7]))
    assert seed.y[0] == expected.refine()
