"""
ClusterDilog — Quivers

Finite quivers without loops or 2-cycles, in bijection with skew-symmetric
exchange matrices: an arrow i -> j of multiplicity m means b_ij = m.
"""

import logging
from dataclasses import dataclass

import numpy as np

from core.seed.matrix import ExchangeMatrix, mutate_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Quiver:
    """Vertices 1..n and arrows (i, j, multiplicity) sorted by (i, j)."""

    n: int
    arrows: tuple[tuple[int, int, int], ...]

    @classmethod
    def from_arrows(cls, n: int, arrows) -> "Quiver":
        counts: dict[tuple[int, int], int] = {}
        for i, j, m in arrows:
            i, j, m = int(i), int(j), int(m)
            if i == j:
                raise ValueError(f"quiver has a loop at vertex {i}")
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"arrow {i}->{j} leaves vertex range 1..{n}")
            if m <= 0:
                raise ValueError(f"arrow {i}->{j} needs positive multiplicity, got {m}")
            counts[(i, j)] = counts.get((i, j), 0) + m
        for i, j in counts:
            if (j, i) in counts:
                raise ValueError(f"quiver has a 2-cycle between {i} and {j}")
        return cls(n, tuple(sorted((i, j, m) for (i, j), m in counts.items())))

    def to_json(self) -> dict:
        return {"arrows": [list(a) for a in self.arrows]}

    @classmethod
    def from_json(cls, data: dict, n: int | None = None) -> "Quiver":
        arrows = data["arrows"]
        if n is None:
            n = max((max(i, j) for i, j, _ in arrows), default=0)
        return cls.from_arrows(n, arrows)

    def opposite(self) -> "Quiver":
        return Quiver.from_arrows(self.n, [(j, i, m) for i, j, m in self.arrows])


def quiver_from_matrix(matrix: ExchangeMatrix) -> Quiver:
    if not matrix.is_skew_symmetric():
        raise ValueError(f"only skew-symmetric matrices have quivers, got {matrix}")
    n = matrix.rank
    arrows = [(i, j, matrix[i, j]) for i in range(1, n + 1) for j in range(1, n + 1) if matrix[i, j] > 0]
    return Quiver.from_arrows(n, arrows)


def matrix_from_quiver(quiver: Quiver) -> ExchangeMatrix:
    b = np.zeros((quiver.n, quiver.n), dtype=np.int64)
    for i, j, m in quiver.arrows:
        b[i - 1, j - 1] = m
        b[j - 1, i - 1] = -m
    return ExchangeMatrix.from_rows(b)


def mutate_quiver(quiver: Quiver, k: int) -> Quiver:
    return quiver_from_matrix(mutate_matrix(matrix_from_quiver(quiver), k))
