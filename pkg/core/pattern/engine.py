"""
ClusterDilog — Pattern Engine

Runs the C-, G-matrix and F-polynomial recursions along a mutation word and
keeps the whole history: B(s), C(s), G(s), F(s) for s = 0..P together with
the tropical sign ε_s and the c⁺-vector of every step. F-mutation divides
exactly, so every F(s) is a polynomial with constant term 1.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from core.algebra.factored import FactoredSF
from core.algebra.polynomial import (
    ExpVector,
    MultiPoly,
    constant_term,
    exact_div,
    has_nonnegative_integer_coefficients,
    poly_from_json,
    poly_ring,
    poly_to_json,
)
from core.errors import SignIncoherent, SymbolicBudgetExceeded, VerificationError
from core.seed.matrix import ExchangeMatrix, check_direction, mutate_array
from models.cdl_models import DIWeightsModel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MutationWord:
    """Initial exchange matrix (with its δ) and a 1-based direction sequence."""

    matrix: ExchangeMatrix
    dirs: tuple[int, ...]

    @classmethod
    def of(cls, matrix: ExchangeMatrix, dirs) -> "MutationWord":
        dirs = tuple(int(k) for k in dirs)
        for k in dirs:
            check_direction(matrix.rank, k)
        return cls(matrix, dirs)

    @property
    def delta(self) -> tuple[int, ...]:
        return self.matrix.delta

    def __len__(self) -> int:
        return len(self.dirs)


def tropical_sign(column: np.ndarray, step: int = -1) -> int:
    """+1 for a nonnegative column, -1 for a nonpositive one."""
    if not column.any():
        raise SignIncoherent(f"zero c-vector at step {step}")
    if (column >= 0).all():
        return 1
    if (column <= 0).all():
        return -1
    raise SignIncoherent(f"c-vector {column.tolist()} at step {step} is not sign-coherent")


def mutate_c(c: np.ndarray, b: np.ndarray, k0: int, eps: int = 1) -> np.ndarray:
    """c'_ij = -c_ik for j = k, else c_ij + c_ik [ε b_kj]_+ + [-ε c_ik]_+ b_kj."""
    col = c[:, k0]
    row = b[k0, :]
    out = c + np.outer(col, np.maximum(eps * row, 0)) + np.outer(np.maximum(-eps * col, 0), row)
    out[:, k0] = -col
    return out


def mutate_g(g: np.ndarray, b: np.ndarray, b0: np.ndarray, c: np.ndarray, k0: int) -> np.ndarray:
    """Only column k changes: g'_k = -g_k + Σ_l g_l [-b_lk]_+ - Σ_l b0_{.l} [-c_lk]_+."""
    out = g.copy()
    out[:, k0] = -g[:, k0] + g @ np.maximum(-b[:, k0], 0) - b0 @ np.maximum(-c[:, k0], 0)
    return out


def _y_monomial(ring, exps) -> MultiPoly:
    term = ring.one
    for gen, e in zip(ring.gens, exps):
        if e > 0:
            term = term * gen ** int(e)
    return term


def mutate_f(f: tuple[MultiPoly, ...], c: np.ndarray, b: np.ndarray, k0: int) -> tuple[MultiPoly, ...]:
    """F'_k = M_k / F_k with M_k = y^[c_k]+ Π F^[b_.k]+ + y^[-c_k]+ Π F^[-b_.k]+."""
    ring = f[0].ring
    col_c = c[:, k0]
    col_b = b[:, k0]
    plus = _y_monomial(ring, np.maximum(col_c, 0))
    minus = _y_monomial(ring, np.maximum(-col_c, 0))
    for j, bj in enumerate(col_b):
        if bj > 0:
            plus = plus * f[j] ** int(bj)
        elif bj < 0:
            minus = minus * f[j] ** int(-bj)
    out = list(f)
    out[k0] = exact_div(plus + minus, f[k0])
    return tuple(out)


@dataclass(frozen=True, eq=False)
class PatternRun:
    """Full trace of a mutation word; index s runs over seeds 0..P."""

    word: MutationWord
    b: tuple[np.ndarray, ...]
    c: tuple[np.ndarray, ...]
    g: tuple[np.ndarray, ...]
    f: tuple[tuple[MultiPoly, ...], ...]
    signs: tuple[int, ...]
    c_plus: tuple[ExpVector, ...]
    _factored: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return self.word.matrix.rank

    @property
    def length(self) -> int:
        return len(self.word.dirs)

    @property
    def delta(self) -> tuple[int, ...]:
        return self.word.delta

    def direction(self, s: int) -> int:
        """1-based direction k_s of step s."""
        return self.word.dirs[s]

    def weight(self, s: int) -> int:
        """δ_{k_s}."""
        return self.delta[self.word.dirs[s] - 1]

    def factored_f(self, s: int, j: int) -> FactoredSF:
        """F_j(s) (0-based j) as a factored value, cached per run."""
        key = (s, j)
        value = self._factored.get(key)
        if value is None:
            poly = self.f[s][j]
            value = FactoredSF.unit(self.rank) if poly == 1 else FactoredSF.from_poly(poly)
            self._factored[key] = value
        return value

    def to_json(self) -> dict:
        return {
            "b0": self.word.matrix.to_json(),
            "dirs": list(self.word.dirs),
            "b": [m.tolist() for m in self.b],
            "c": [m.tolist() for m in self.c],
            "g": [m.tolist() for m in self.g],
            "f": [[poly_to_json(p) for p in fs] for fs in self.f],
            "eps": list(self.signs),
        }

    @classmethod
    def from_json(cls, data: dict) -> "PatternRun":
        matrix = ExchangeMatrix.from_json(data["b0"])
        n = matrix.rank

        def arrays(key):
            return tuple(np.array(m, dtype=np.int64) for m in data[key])

        c = arrays("c")
        signs = tuple(int(e) for e in data["eps"])
        dirs = tuple(int(k) for k in data["dirs"])
        c_plus = tuple(tuple(int(signs[s] * x) for x in c[s][:, k - 1]) for s, k in enumerate(dirs))
        return cls(
            MutationWord.of(matrix, dirs),
            arrays("b"),
            c,
            arrays("g"),
            tuple(tuple(poly_from_json(p, n) for p in fs) for fs in data["f"]),
            signs,
            c_plus,
        )


def run_pattern(word: MutationWord, term_budget: int | None = None) -> PatternRun:
    """
    Apply the C/G/F recursions along the word, recording every seed. With a
    term budget the run stops with SymbolicBudgetExceeded once the current
    F-polynomials hold more terms in total.
    """
    n = word.matrix.rank
    b0 = word.matrix.array
    ring = poly_ring(n)
    bs, cs, gs = [b0], [np.eye(n, dtype=np.int64)], [np.eye(n, dtype=np.int64)]
    fs = [tuple(ring.one for _ in range(n))]
    signs, c_plus = [], []
    for s, k in enumerate(word.dirs):
        k0 = k - 1
        b, c, g, f = bs[-1], cs[-1], gs[-1], fs[-1]
        eps = tropical_sign(c[:, k0], s)
        signs.append(eps)
        c_plus.append(tuple(int(eps * x) for x in c[:, k0]))
        fs.append(mutate_f(f, c, b, k0))
        gs.append(mutate_g(g, b, b0, c, k0))
        cs.append(mutate_c(c, b, k0))
        bs.append(mutate_array(b, k0))
        if term_budget is not None:
            terms = sum(len(p) for p in fs[-1])
            if terms > term_budget:
                raise SymbolicBudgetExceeded(f"{terms} F-polynomial terms after step {s} exceed {term_budget}")
        logger.debug("step %d: mutated at %d, eps=%+d, c+=%s", s, k, eps, c_plus[-1])
    for s, f in enumerate(fs):
        for j, poly in enumerate(f):
            if constant_term(poly) != 1 or not has_nonnegative_integer_coefficients(poly):
                raise VerificationError(f"F_{j + 1}({s}) = {poly.as_expr()} lacks constant term 1 or positivity")
    logger.debug("ran word of length %d on rank %d", len(word.dirs), n)
    return PatternRun(word, tuple(bs), tuple(cs), tuple(gs), tuple(fs), tuple(signs), tuple(c_plus))


def di_weights(run: PatternRun) -> DIWeightsModel:
    """N± = Σ_s δ_{k_s}(1 ± ε_s)/2."""
    n_plus = sum(run.weight(s) for s, e in enumerate(run.signs) if e > 0)
    n_minus = sum(run.weight(s) for s, e in enumerate(run.signs) if e < 0)
    return DIWeightsModel(n_plus=n_plus, n_minus=n_minus)
