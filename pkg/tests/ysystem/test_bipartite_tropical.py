"""Unit tests for bipartite product quivers and the tropical and symbolic Y-system runs."""

import numpy as np
import pytest

from core.errors import NotSimplyLaced, SymbolicBudgetExceeded
from core.seed.dynkin import DynkinType
from core.seed.matrix import mutate_sequence
from core.ysystem.bipartite import ade_pairs, ade_types, bipartite_quiver, build_bipartite_word, dynkin_signs
from core.ysystem.tropical import symbolic_run, tropical_run, tropical_trace

ADE_PAIRS = ade_pairs(16)


def test_dynkin_signs_alternate():
    """Test that adjacent vertices get opposite signs, starting from the chosen sign."""
    e6 = DynkinType.parse("E6")
    signs = dynkin_signs(e6, -1)
    assert signs[0] == -1
    assert all(signs[a - 1] == -signs[b - 1] for a, b in e6.edges)


def test_a3_a2_first_block():
    """Test that Q(A3, A2) with κ = - at vertex 1 starts with mutations at 2, 4, 6."""
    word = build_bipartite_word("A3", "A2", kappa_first=-1, composite_steps=1)
    assert word.dirs == (2, 4, 6)


def test_a3_a2_labels():
    """Test the vertex numbering (a'-1)r + a and its inverse."""
    bq = bipartite_quiver("A3", "A2")
    assert bq.vertex(3, 2) == 6
    assert [bq.label(v) for v in range(1, 7)] == [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (3, 2)]
    assert bq.omega_permutation() == (6, 5, 4, 3, 2, 1)


@pytest.mark.parametrize("kappa_first", [1, -1])
def test_composite_mutation_gives_opposite_quiver(kappa_first):
    """Test that μ₊ and μ₋ each reverse every arrow of Q(A3, A2)."""
    bq = bipartite_quiver("A3", "A2", kappa_first)
    b = bq.matrix
    assert np.array_equal(mutate_sequence(b, bq.v_plus).array, -b.array)
    assert np.array_equal(mutate_sequence(b, bq.v_minus).array, -b.array)


def test_no_arrows_inside_sign_classes():
    """Test that every arrow joins V₊ and V₋."""
    bq = bipartite_quiver("D4", "A3")
    for i, j, _ in bq.quiver.arrows:
        assert bq.kappa[i - 1] == -bq.kappa[j - 1]


def test_a1_a1_word():
    """Test that (A1, A1) alternates a single mutation with an empty step."""
    word = build_bipartite_word("A1", "A1")
    assert word.dirs == (1, 1, 1, 1)


def test_rejects_non_simply_laced():
    """Test NotSimplyLaced for B and G types."""
    with pytest.raises(NotSimplyLaced):
        build_bipartite_word("B2", "A1")
    with pytest.raises(NotSimplyLaced):
        tropical_run("A2", "G2")


def test_a3_a2_tropical_run():
    """Test half period 7, the ω-permuted final frame and N± for (A3, A2)."""
    report = tropical_run("A3", "A2", kappa_first=-1)
    assert report.passed
    assert (report.half_period, report.full_period) == (7, 14)
    assert report.omega == [6, 5, 4, 3, 2, 1]
    assert report.omega_used
    assert (report.n_plus, report.n_minus) == (9, 12)
    assert report.constant == "24·π²/6"


def test_a3_a2_final_frame():
    """Test c_{1,1}(7) = e_{3,2} and c_{2,1}(7) = e_{2,2}."""
    trace = tropical_trace("A3", "A2", kappa_first=-1)
    assert trace.steps == 7
    assert trace.vector(7, 1, 1) == [0, 0, 0, 0, 0, 1]
    assert trace.vector(7, 2, 1) == [0, 0, 0, 0, 1, 0]
    assert trace.factorization


def test_a2_a1_counts():
    """Test N₋ = 3 over the half period of (A2, A1)."""
    report = tropical_run("A2", "A1")
    assert report.passed
    assert report.n_minus == 3
    assert report.constant == "6·π²/6"


def test_a1_a1_trivial_omega():
    """Test that (A1, A1) has half period 4 with ω trivial."""
    report = tropical_run("A1", "A1")
    assert report.passed and not report.omega_used
    assert report.half_period == 4


@pytest.mark.parametrize("x, xp", ADE_PAIRS)
@pytest.mark.parametrize("kappa_first", [1, -1])
def test_tropical_half_periodicity(x, xp, kappa_first):
    """Test half periodicity, factorization and the sign counts for ADE pairs with rr' <= 16."""
    report = tropical_run(x, xp, kappa_first)
    tx, txp = DynkinType.parse(x), DynkinType.parse(xp)
    rr = tx.rank * txp.rank
    assert report.passed and report.factorization
    assert 2 * report.n_plus == txp.coxeter_number * rr
    assert 2 * report.n_minus == tx.coxeter_number * rr


@pytest.mark.parametrize("x, xp", [("A2", "A1"), ("A1", "A2"), ("A2", "A2")])
def test_symbolic_half_periodicity(x, xp):
    """Test that C, G and F return to the (ω, ω')-permuted seed after h + h' steps."""
    run, report = symbolic_run(x, xp)
    assert report.passed and report.symbolic
    assert run.length == len(build_bipartite_word(x, xp, composite_steps=report.half_period))


@pytest.mark.slow
def test_symbolic_a3_a2():
    """Test the symbolic half period of (A3, A2)."""
    _, report = symbolic_run("A3", "A2", kappa_first=-1)
    assert report.passed
    assert report.omega == [6, 5, 4, 3, 2, 1]


def test_symbolic_budget():
    """Test that a tiny term budget stops the symbolic run."""
    with pytest.raises(SymbolicBudgetExceeded):
        symbolic_run("A3", "A2", term_budget=5)


def test_ade_catalog():
    """Test the ADE pairs with rr' <= 16: 105 ordered pairs including the long A and D chains."""
    assert [t.name for t in ade_types(8)][-6:] == ["A7", "D7", "E7", "A8", "D8", "E8"]
    pairs = ade_pairs(16)
    assert len(pairs) == 105
    assert len(set(pairs)) == 105
    for pair in [("A1", "A16"), ("A2", "A8"), ("D16", "A1"), ("A2", "E6"), ("E7", "A1"), ("A4", "D4")]:
        assert pair in pairs
    assert ("A3", "A6") not in pairs
    assert ("E6", "A3") not in pairs
