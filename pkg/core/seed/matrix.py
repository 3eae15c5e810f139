"""
ClusterDilog — Exchange Matrices

Skew-symmetrizable integer matrices B, their skew-symmetric decomposition
B = ΔΩ with minimal integer δ per indecomposable block, matrix mutation in
ε-form, the principal extension and the relabelling action of permutations.
Directions and permutations are 1-indexed at this interface; arrays are
numpy int64 internally.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import numpy as np
import sympy

from core.errors import BadDirection, NotSkewSymmetrizable

logger = logging.getLogger(__name__)

Permutation = tuple[int, ...]


def _components(rows: np.ndarray) -> list[list[int]]:
    """Connected components of the graph i - j whenever b_ij != 0."""
    n = rows.shape[0]
    seen = [False] * n
    blocks = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        stack, block = [start], []
        while stack:
            i = stack.pop()
            block.append(i)
            for j in range(n):
                if not seen[j] and (rows[i, j] or rows[j, i]):
                    seen[j] = True
                    stack.append(j)
        blocks.append(sorted(block))
    return blocks


def skew_symmetrizer(rows) -> tuple[int, ...]:
    """
    Minimal positive integers δ with δ_j b_ij = -δ_i b_ji for all i, j, i.e.
    D = diag(1/δ) makes DB skew-symmetric. Each block is scaled separately.
    """
    b = np.asarray(rows, dtype=np.int64)
    n = b.shape[0]
    delta: list[Fraction | None] = [None] * n
    for block in _components(b):
        delta[block[0]] = Fraction(1)
        stack = [block[0]]
        while stack:
            i = stack.pop()
            for j in block:
                if b[i, j] == 0 and b[j, i] == 0:
                    continue
                if b[i, j] * b[j, i] >= 0:
                    raise NotSkewSymmetrizable(
                        f"entries b[{i + 1},{j + 1}]={b[i, j]} and b[{j + 1},{i + 1}]={b[j, i]} "
                        "must be nonzero with opposite signs"
                    )
                candidate = -delta[i] * int(b[j, i]) / int(b[i, j])
                if delta[j] is None:
                    delta[j] = candidate
                    stack.append(j)
                elif delta[j] != candidate:
                    raise NotSkewSymmetrizable(f"cycle through vertex {j + 1} has inconsistent weights")
        scale = lcm(*(delta[i].denominator for i in block))
        ints = [int(delta[i] * scale) for i in block]
        common = gcd(*ints)
        for i, v in zip(block, ints):
            delta[i] = Fraction(v // common)
    return tuple(int(d) for d in delta)


@dataclass(frozen=True)
class SkewDecomposition:
    """B = ΔΩ with Δ = diag(delta) and Ω skew-symmetric with rational entries."""

    delta: tuple[int, ...]
    omega: tuple[tuple[Fraction, ...], ...]

    def bracket(self, n, m) -> Fraction:
        """The skew form {n, m} = nᵀ Ω m."""
        total = Fraction(0)
        for i, ni in enumerate(n):
            if ni:
                row = self.omega[i]
                total += ni * sum((row[j] * mj for j, mj in enumerate(m) if mj), Fraction(0))
        return total

    def is_singular(self) -> bool:
        return sympy.Matrix(self.omega).det() == 0


@dataclass(frozen=True)
class ExchangeMatrix:
    """A skew-symmetrizable integer matrix together with its skew-symmetrizer δ."""

    entries: tuple[tuple[int, ...], ...]
    delta: tuple[int, ...]

    @classmethod
    def from_rows(cls, rows, delta=None) -> "ExchangeMatrix":
        b = np.asarray(rows, dtype=np.int64)
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise ValueError(f"exchange matrix must be square, got shape {b.shape}")
        if any(b[i, i] for i in range(b.shape[0])):
            raise NotSkewSymmetrizable("exchange matrix has a nonzero diagonal entry")
        minimal = skew_symmetrizer(b)
        if delta is None:
            delta = minimal
        else:
            delta = tuple(int(d) for d in delta)
            if len(delta) != b.shape[0] or any(d <= 0 for d in delta):
                raise NotSkewSymmetrizable(f"delta {delta} must be {b.shape[0]} positive integers")
            for i in range(b.shape[0]):
                for j in range(b.shape[0]):
                    if delta[j] * b[i, j] != -delta[i] * b[j, i]:
                        raise NotSkewSymmetrizable(f"delta {delta} does not skew-symmetrize B at ({i + 1},{j + 1})")
        entries = tuple(tuple(int(x) for x in row) for row in b)
        return cls(entries, tuple(delta))

    @property
    def rank(self) -> int:
        return len(self.entries)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        """Entry b_ij with 1-based indices."""
        i, j = ij
        return self.entries[i - 1][j - 1]

    def decomposition(self) -> SkewDecomposition:
        omega = tuple(
            tuple(Fraction(b, d) for b in row) for row, d in zip(self.entries, self.delta)
        )
        return SkewDecomposition(self.delta, omega)

    def d_matrix(self) -> tuple[Fraction, ...]:
        """Diagonal of the skew-symmetrizer D = diag(1/δ)."""
        return tuple(Fraction(1, d) for d in self.delta)

    def determinant(self) -> int:
        return int(sympy.Matrix(self.entries).det())

    def is_skew_symmetric(self) -> bool:
        b = self.array
        return bool((b == -b.T).all())

    def to_json(self) -> dict:
        return {"b": [list(row) for row in self.entries], "delta": list(self.delta)}

    @classmethod
    def from_json(cls, data: dict) -> "ExchangeMatrix":
        return cls.from_rows(data["b"], data.get("delta"))

    def __str__(self) -> str:
        return str([list(row) for row in self.entries])


def check_direction(n: int, k: int) -> None:
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= n:
        raise BadDirection(f"direction {k} outside 1..{n}")


def mutate_array(b: np.ndarray, k0: int, eps: int = 1) -> np.ndarray:
    """
    ε-expression of matrix mutation at 0-based k0:
    b'_ij = -b_ij if i or j is k0, else b_ij + b_ik [ε b_kj]_+ + [-ε b_ik]_+ b_kj.
    """
    col = b[:, k0]
    row = b[k0, :]
    out = b + np.outer(col, np.maximum(eps * row, 0)) + np.outer(np.maximum(-eps * col, 0), row)
    out[k0, :] = -b[k0, :]
    out[:, k0] = -b[:, k0]
    return out


def mutate_matrix(matrix: ExchangeMatrix, k: int, eps: int = 1) -> ExchangeMatrix:
    """Mutation in direction k (1-based); the result does not depend on eps."""
    check_direction(matrix.rank, k)
    if eps not in (1, -1):
        raise ValueError(f"eps must be +1 or -1, got {eps}")
    out = mutate_array(matrix.array, k - 1, eps)
    return ExchangeMatrix(tuple(tuple(int(x) for x in row) for row in out), matrix.delta)


def mutate_sequence(matrix: ExchangeMatrix, word) -> ExchangeMatrix:
    for k in word:
        matrix = mutate_matrix(matrix, k)
    return matrix


def principal_extension(matrix: ExchangeMatrix) -> ExchangeMatrix:
    """The 2n x 2n matrix [[B, -I], [I, O]] with skew-symmetrizer δ ⊕ δ."""
    n = matrix.rank
    ext = np.zeros((2 * n, 2 * n), dtype=np.int64)
    ext[:n, :n] = matrix.array
    ext[:n, n:] = -np.eye(n, dtype=np.int64)
    ext[n:, :n] = np.eye(n, dtype=np.int64)
    return ExchangeMatrix.from_rows(ext, matrix.delta + matrix.delta)


def validate_permutation(nu, n: int) -> Permutation:
    nu = tuple(int(v) for v in nu)
    if sorted(nu) != list(range(1, n + 1)):
        raise ValueError(f"{nu} is not a permutation of 1..{n}")
    return nu


def inverse_permutation(nu: Permutation) -> Permutation:
    inv = [0] * len(nu)
    for i, v in enumerate(nu, start=1):
        inv[v - 1] = i
    return tuple(inv)


def identity_permutation(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def permute_matrix(b: np.ndarray, nu: Permutation) -> np.ndarray:
    """b'_ij = b_{ν⁻¹(i) ν⁻¹(j)}."""
    idx = [v - 1 for v in inverse_permutation(nu)]
    return b[np.ix_(idx, idx)]


def permute_columns(c: np.ndarray, nu: Permutation) -> np.ndarray:
    """c'_ij = c_{i ν⁻¹(j)}."""
    idx = [v - 1 for v in inverse_permutation(nu)]
    return c[:, idx]


def permute_items(values, nu: Permutation) -> tuple:
    """v'_i = v_{ν⁻¹(i)}."""
    return tuple(values[v - 1] for v in inverse_permutation(nu))


def relabel_matrix(matrix: ExchangeMatrix, nu) -> ExchangeMatrix:
    nu = validate_permutation(nu, matrix.rank)
    b = permute_matrix(matrix.array, nu)
    return ExchangeMatrix(
        tuple(tuple(int(x) for x in row) for row in b), permute_items(matrix.delta, nu)
    )
