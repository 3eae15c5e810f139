"""Named rank-2 exchange matrices and their periodic words."""

from core.seed.matrix import ExchangeMatrix

RANK2 = {
    "A2": ([[0, -1], [1, 0]], (1, 2, 1, 2, 1)),
    "B2": ([[0, -1], [2, 0]], (1, 2) * 3),
    "G2": ([[0, -1], [3, 0]], (1, 2) * 4),
}


def named_matrix(name: str) -> ExchangeMatrix:
    try:
        rows, _ = RANK2[name.upper()]
    except KeyError:
        raise ValueError(f"unknown fixture {name!r}, expected one of {sorted(RANK2)}") from None
    return ExchangeMatrix.from_rows(rows)


def named_word(name: str) -> tuple[int, ...]:
    """Word whose run is periodic (ν = τ12 for A2, identity for B2 and G2)."""
    named_matrix(name)
    return RANK2[name.upper()][1]


def rank2_matrix(d1: int, d2: int) -> ExchangeMatrix:
    """B = [[0, -δ1], [δ2, 0]] with skew form [[0, -1], [1, 0]]."""
    return ExchangeMatrix.from_rows([[0, -d1], [d2, 0]], delta=(d1, d2))
