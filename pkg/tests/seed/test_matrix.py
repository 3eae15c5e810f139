"""Unit tests for exchange matrices, mutation and the principal extension."""

from fractions import Fraction

import numpy as np
import pytest

from core.errors import BadDirection, NotSkewSymmetrizable
from core.seed.matrix import (
    ExchangeMatrix,
    mutate_matrix,
    mutate_sequence,
    principal_extension,
    relabel_matrix,
    skew_symmetrizer,
)

A2 = [[0, -1], [1, 0]]
B2 = [[0, -1], [2, 0]]
G2 = [[0, -1], [3, 0]]
A3 = [[0, 1, 0], [-1, 0, -1], [0, 1, 0]]


def test_mutate_a2_negates():
    """Test μ1 on the A2 matrix returns -B."""
    b = ExchangeMatrix.from_rows(A2)
    assert mutate_matrix(b, 1).entries == ((0, 1), (-1, 0))


@pytest.mark.parametrize("rows", [A2, B2, G2, A3])
def test_mutation_is_involution(rows):
    """Test μk∘μk = id in every direction."""
    b = ExchangeMatrix.from_rows(rows)
    for k in range(1, b.rank + 1):
        assert mutate_matrix(mutate_matrix(b, k), k) == b


@pytest.mark.parametrize("rows", [B2, G2, A3, [[0, 2, -1], [-2, 0, 2], [1, -2, 0]]])
def test_mutation_is_independent_of_sign(rows):
    """Test that both ε-expressions give the same matrix."""
    b = ExchangeMatrix.from_rows(rows)
    for k in range(1, b.rank + 1):
        assert mutate_matrix(b, k, 1) == mutate_matrix(b, k, -1)


@pytest.mark.parametrize("rows", [B2, G2, [[0, 2, -1], [-2, 0, 2], [1, -2, 0]]])
def test_mutation_preserves_determinant_and_symmetrizer(rows):
    """Test that determinant and minimal skew-symmetrizer survive mutation."""
    b = ExchangeMatrix.from_rows(rows)
    for word in ([1], [2, 1], [1, 2, 1, 2]):
        m = mutate_sequence(b, word)
        assert m.determinant() == b.determinant()
        assert skew_symmetrizer(m.entries) == b.delta


def test_commuting_mutations():
    """Test μ1μ3 = μ3μ1 on A3 where b13 = b31 = 0."""
    b = ExchangeMatrix.from_rows(A3)
    assert mutate_sequence(b, [1, 3]) == mutate_sequence(b, [3, 1])


def test_bad_direction():
    """Test that directions outside 1..n are rejected."""
    b = ExchangeMatrix.from_rows(A2)
    with pytest.raises(BadDirection):
        mutate_matrix(b, 0)
    with pytest.raises(BadDirection):
        mutate_matrix(b, 3)


def test_skew_symmetrizer_values():
    """Test the minimal δ for B2, G2 and a decomposable block sum."""
    assert skew_symmetrizer(B2) == (1, 2)
    assert skew_symmetrizer(G2) == (1, 3)
    block = np.zeros((4, 4), dtype=int)
    block[:2, :2] = B2
    block[2:, 2:] = G2
    assert skew_symmetrizer(block) == (1, 2, 1, 3)


def test_skew_decomposition_b2():
    """Test B = ΔΩ with Ω skew-symmetric for B2."""
    dec = ExchangeMatrix.from_rows(B2).decomposition()
    assert dec.delta == (1, 2)
    assert dec.omega == ((0, Fraction(-1)), (Fraction(1), 0))
    assert dec.bracket((1, 0), (0, 1)) == -1


def test_not_skew_symmetrizable():
    """Test that same-sign off-diagonal pairs are rejected."""
    with pytest.raises(NotSkewSymmetrizable):
        ExchangeMatrix.from_rows([[0, 1], [1, 0]])
    with pytest.raises(NotSkewSymmetrizable):
        ExchangeMatrix.from_rows(B2, delta=[1, 1])


def test_explicit_delta_multiple_accepted():
    """Test that a valid non-minimal δ is kept when given explicitly."""
    b = ExchangeMatrix.from_rows(A2, delta=[2, 2])
    assert b.delta == (2, 2)
    assert ExchangeMatrix.from_json(b.to_json()) == b


def test_principal_extension_rank_one():
    """Test the extension of the zero 1x1 matrix."""
    ext = principal_extension(ExchangeMatrix.from_rows([[0]]))
    assert ext.entries == ((0, -1), (1, 0))


@pytest.mark.parametrize("rows", [[[0]], A2, B2, G2, [[0, -2], [2, 0]], [[0, 0], [0, 0]]])
def test_principal_extension_nonsingular(rows):
    """Test that the principal extension is unimodular with symmetrizer δ ⊕ δ."""
    b = ExchangeMatrix.from_rows(rows)
    ext = principal_extension(b)
    assert ext.determinant() == 1
    assert ext.delta == b.delta + b.delta


def test_relabel_transposes_a2():
    """Test that τ12 on the A2 matrix gives its transpose."""
    b = ExchangeMatrix.from_rows(A2)
    assert relabel_matrix(b, (2, 1)).entries == ((0, 1), (-1, 0))
    assert relabel_matrix(b, (1, 2)) == b
