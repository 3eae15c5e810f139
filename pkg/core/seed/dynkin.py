"""
ClusterDilog — Dynkin Types

Labelled Dynkin diagrams, Coxeter numbers and diagram automorphisms, plus the
finite-type test for an exchange matrix through its Cartan counterpart
a_ii = 2, a_ij = -|b_ij|. Classification inspects only the given matrix and
never searches its mutation class.
"""

import logging
import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from core.errors import Decomposable
from core.seed.matrix import ExchangeMatrix, _components

logger = logging.getLogger(__name__)

_RANK_RULES = {
    "A": lambda r: r >= 1,
    "B": lambda r: r >= 2,
    "C": lambda r: r >= 2,
    "D": lambda r: r >= 4,
    "E": lambda r: r in (6, 7, 8),
    "F": lambda r: r == 4,
    "G": lambda r: r == 2,
}


@dataclass(frozen=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self) -> None:
        rule = _RANK_RULES.get(self.family)
        if rule is None or not rule(self.rank):
            raise ValueError(f"no Dynkin diagram of type {self.family}{self.rank}")

    @classmethod
    def parse(cls, name: str) -> "DynkinType":
        match = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", name)
        if not match:
            raise ValueError(f"cannot parse Dynkin type {name!r}")
        return cls(match.group(1).upper(), int(match.group(2)))

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def is_simply_laced(self) -> bool:
        return self.family in ("A", "D", "E")

    @property
    def coxeter_number(self) -> int:
        r = self.rank
        if self.family == "A":
            return r + 1
        if self.family in ("B", "C"):
            return 2 * r
        if self.family == "D":
            return 2 * r - 2
        return {"E6": 12, "E7": 18, "E8": 30, "F4": 12, "G2": 6}[self.name]

    @property
    def positive_root_count(self) -> int:
        return self.coxeter_number * self.rank // 2

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges of the labelled diagram, ignoring multiplicities."""
        r = self.rank
        if self.family == "D":
            chain = [(a, a + 1) for a in range(1, r - 1)]
            return tuple(chain + [(r - 2, r)])
        if self.family == "E":
            if r == 6:
                return ((1, 2), (2, 3), (3, 5), (5, 6), (3, 4))
            if r == 7:
                return tuple([(a, a + 1) for a in range(1, 6)] + [(3, 7)])
            return tuple([(a, a + 1) for a in range(1, 7)] + [(5, 8)])
        return tuple((a, a + 1) for a in range(1, r))

    def neighbours(self, a: int) -> tuple[int, ...]:
        return tuple(sorted({j for i, j in self.edges if i == a} | {i for i, j in self.edges if j == a}))

    @cached_property
    def omega(self) -> tuple[int, ...]:
        """Diagram automorphism ω used by Y-system half periodicity, one-line 1-based."""
        r = self.rank
        perm = list(range(1, r + 1))
        if self.family == "A":
            perm = [r + 1 - a for a in perm]
        elif self.family == "D" and r % 2 == 1:
            perm[r - 2], perm[r - 1] = r, r - 1
        elif self.name == "E6":
            perm = [6, 5, 3, 4, 2, 1]
        return tuple(perm)

    def cartan_matrix(self) -> np.ndarray:
        """Cartan matrix; the short end carries -2 (-3) in its row for B and G, the long end for C."""
        r = self.rank
        a = 2 * np.eye(r, dtype=np.int64)
        for i, j in self.edges:
            a[i - 1, j - 1] = a[j - 1, i - 1] = -1
        if self.family == "B":
            a[r - 1, r - 2] = -2
        elif self.family == "C":
            a[r - 2, r - 1] = -2
        elif self.family == "F":
            a[2, 1] = -2
        elif self.family == "G":
            a[1, 0] = -3
        return a


def dynkin_type(family: str, rank: int) -> DynkinType:
    return DynkinType(family.upper(), int(rank))


def cartan_counterpart(matrix: ExchangeMatrix) -> np.ndarray:
    b = matrix.array
    a = -np.abs(b)
    np.fill_diagonal(a, 2)
    return a


def _path_order(adj: dict[int, set[int]]) -> list[int] | None:
    ends = [v for v, ns in adj.items() if len(ns) <= 1]
    if len(adj) == 1:
        return list(adj)
    if len(ends) != 2 or any(len(ns) > 2 for ns in adj.values()):
        return None
    order, prev = [ends[0]], None
    while len(order) < len(adj):
        nxt = [v for v in adj[order[-1]] if v != prev]
        prev = order[-1]
        order.append(nxt[0])
    return order


def _arm_lengths(adj: dict[int, set[int]], centre: int) -> list[int]:
    lengths = []
    for start in adj[centre]:
        length, prev, cur = 1, centre, start
        while True:
            nxt = [v for v in adj[cur] if v != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                return []
            prev, cur = cur, nxt[0]
            length += 1
        lengths.append(length)
    return sorted(lengths)


def classify_finite_type(matrix: ExchangeMatrix) -> DynkinType | None:
    """Dynkin type of the Cartan counterpart A(B), or None if A(B) is not of finite type."""
    a = cartan_counterpart(matrix)
    n = matrix.rank
    if len(_components(matrix.array)) > 1:
        raise Decomposable(f"exchange matrix {matrix} is decomposable")
    adj: dict[int, set[int]] = {i: set() for i in range(n)}
    products: dict[tuple[int, int], int] = {}
    for i in range(n):
        for j in range(i + 1, n):
            if a[i, j]:
                adj[i].add(j)
                adj[j].add(i)
                products[(i, j)] = int(a[i, j] * a[j, i])
    if len(products) != n - 1 or any(p > 3 for p in products.values()):
        return None
    heavy = {e: p for e, p in products.items() if p > 1}
    if not heavy:
        order = _path_order(adj)
        if order is not None:
            return DynkinType("A", n)
        centres = [v for v, ns in adj.items() if len(ns) == 3]
        if len(centres) != 1 or any(len(ns) > 3 for ns in adj.values()):
            return None
        arms = _arm_lengths(adj, centres[0])
        if arms[:2] == [1, 1]:
            return DynkinType("D", n)
        if arms == [1, 2, 2]:
            return DynkinType("E", 6)
        if arms == [1, 2, 3]:
            return DynkinType("E", 7)
        if arms == [1, 2, 4]:
            return DynkinType("E", 8)
        return None
    if len(heavy) > 1:
        return None
    order = _path_order(adj)
    if order is None:
        return None
    (i, j), p = next(iter(heavy.items()))
    if p == 3:
        return DynkinType("G", 2) if n == 2 else None
    pos = sorted((order.index(i), order.index(j)))
    if n == 2:
        return DynkinType("B", 2)
    if n == 4 and pos == [1, 2]:
        return DynkinType("F", 4)
    if pos == [0, 1]:
        end, inner = order[0], order[1]
    elif pos == [n - 2, n - 1]:
        end, inner = order[n - 1], order[n - 2]
    else:
        return None
    return DynkinType("B", n) if a[end, inner] == -2 else DynkinType("C", n)
