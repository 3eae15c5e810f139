"""
ClusterDilog — Y-Seeds

A Y-seed pairs an exchange matrix with a tuple of y-variables held as
factored subtraction-free values. Mutation uses the free-semifield rule and
permutations act by relabelling.
"""

from dataclasses import dataclass

from core.algebra.factored import FactoredSF
from core.seed.matrix import (
    ExchangeMatrix,
    check_direction,
    mutate_matrix,
    permute_items,
    relabel_matrix,
    validate_permutation,
)


@dataclass(frozen=True)
class YSeed:
    matrix: ExchangeMatrix
    y: tuple[FactoredSF, ...]

    @classmethod
    def initial(cls, matrix: ExchangeMatrix) -> "YSeed":
        n = matrix.rank
        return cls(matrix, tuple(FactoredSF.from_monomial([int(i == j) for j in range(n)]) for i in range(n)))


def mutate_yseed(seed: YSeed, k: int) -> YSeed:
    """y'_k = 1/y_k and y'_i = y_i y_k^[b_ki]+ (1 + y_k)^(-b_ki)."""
    n = seed.matrix.rank
    check_direction(n, k)
    yk = seed.y[k - 1]
    one_plus = yk.one_plus()
    out = []
    for i in range(1, n + 1):
        if i == k:
            out.append(yk.inverse())
            continue
        b_ki = seed.matrix[k, i]
        value = seed.y[i - 1]
        if b_ki:
            value = value * yk ** max(b_ki, 0) * one_plus ** (-b_ki)
        out.append(value)
    return YSeed(mutate_matrix(seed.matrix, k), tuple(out))


def sn_act(seed: YSeed, nu) -> YSeed:
    """Relabel a Y-seed: b'_ij = b_{ν⁻¹(i)ν⁻¹(j)} and y'_i = y_{ν⁻¹(i)}."""
    nu = validate_permutation(nu, seed.matrix.rank)
    return YSeed(relabel_matrix(seed.matrix, nu), permute_items(seed.y, nu))
