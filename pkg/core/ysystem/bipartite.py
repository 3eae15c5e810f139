"""
ClusterDilog — Bipartite Product Quivers

The quiver Q(X, X') of a pair of simply-laced Dynkin diagrams: vertices
(a, a') numbered (a'-1)r + a, signs κ_{a,a'} = κ_a κ'_{a'}, horizontal arrows
from V₋ to V₊ and vertical arrows from V₊ to V₋. The Y-system word alternates
the composite mutations μ₊ (all of V₊) and μ₋ (all of V₋).
"""

import logging
from dataclasses import dataclass

import numpy as np

from core.errors import NotSimplyLaced
from core.pattern.engine import MutationWord
from core.seed.dynkin import DynkinType
from core.seed.matrix import ExchangeMatrix, Permutation
from core.seed.quiver import Quiver, matrix_from_quiver

logger = logging.getLogger(__name__)


def as_dynkin(value) -> DynkinType:
    return value if isinstance(value, DynkinType) else DynkinType.parse(str(value))


def require_simply_laced(*types: DynkinType) -> None:
    for t in types:
        if not t.is_simply_laced:
            raise NotSimplyLaced(f"{t.name} is not simply laced; Y-systems here need A, D or E")


def ade_types(max_rank: int) -> list[DynkinType]:
    """A1.., D4.., E6-E8 up to max_rank, ordered by rank then family."""
    types = [DynkinType("A", r) for r in range(1, max_rank + 1)]
    types += [DynkinType("D", r) for r in range(4, max_rank + 1)]
    types += [DynkinType("E", r) for r in (6, 7, 8) if r <= max_rank]
    return sorted(types, key=lambda t: (t.rank, t.family))


def ade_pairs(max_product: int = 16) -> list[tuple[str, str]]:
    """Ordered pairs (X, X') of ADE types with rank(X)·rank(X') <= max_product."""
    types = ade_types(max_product)
    return [(t.name, tp.name) for t in types for tp in types if t.rank * tp.rank <= max_product]


def dynkin_signs(t: DynkinType, first: int = 1) -> tuple[int, ...]:
    """Bipartite signs with κ_1 = first and opposite signs on adjacent vertices."""
    signs = [0] * t.rank
    signs[0] = first
    stack = [1]
    while stack:
        a = stack.pop()
        for b in t.neighbours(a):
            if not signs[b - 1]:
                signs[b - 1] = -signs[a - 1]
                stack.append(b)
    return tuple(signs)


@dataclass(frozen=True)
class BipartiteQuiver:
    x: DynkinType
    xp: DynkinType
    kappa: tuple[int, ...]
    quiver: Quiver

    @property
    def r(self) -> int:
        return self.x.rank

    @property
    def rp(self) -> int:
        return self.xp.rank

    @property
    def size(self) -> int:
        return self.r * self.rp

    def vertex(self, a: int, ap: int) -> int:
        return (ap - 1) * self.r + a

    def label(self, v: int) -> tuple[int, int]:
        return (v - 1) % self.r + 1, (v - 1) // self.r + 1

    @property
    def v_plus(self) -> tuple[int, ...]:
        return tuple(v for v in range(1, self.size + 1) if self.kappa[v - 1] > 0)

    @property
    def v_minus(self) -> tuple[int, ...]:
        return tuple(v for v in range(1, self.size + 1) if self.kappa[v - 1] < 0)

    @property
    def matrix(self) -> ExchangeMatrix:
        return matrix_from_quiver(self.quiver)

    @property
    def half_period(self) -> int:
        return self.x.coxeter_number + self.xp.coxeter_number

    @property
    def full_period(self) -> int:
        return 2 * self.half_period

    def omega_permutation(self) -> Permutation:
        """(a, a') -> (ω(a), ω'(a')) as a vertex permutation."""
        w, wp = self.x.omega, self.xp.omega
        return tuple(self.vertex(w[a - 1], wp[ap - 1]) for a, ap in map(self.label, range(1, self.size + 1)))

    def block(self, u: int) -> tuple[int, ...]:
        """Vertices mutated at composite time u: V₊ for even u, V₋ for odd u."""
        return self.v_plus if u % 2 == 0 else self.v_minus

    def is_horizontal(self, v: int, w: int) -> bool:
        (a, ap), (b, bp) = self.label(v), self.label(w)
        return ap == bp and b in self.x.neighbours(a)

    def is_vertical(self, v: int, w: int) -> bool:
        (a, ap), (b, bp) = self.label(v), self.label(w)
        return a == b and bp in self.xp.neighbours(ap)


def bipartite_quiver(x, xp, kappa_first: int = 1) -> BipartiteQuiver:
    """Q(X, X') with κ = kappa_first at vertex (1, 1)."""
    x, xp = as_dynkin(x), as_dynkin(xp)
    require_simply_laced(x, xp)
    if kappa_first not in (1, -1):
        raise ValueError(f"kappa_first must be +1 or -1, got {kappa_first}")
    kx, kxp = dynkin_signs(x, kappa_first), dynkin_signs(xp, 1)
    r = x.rank
    kappa = tuple(kx[a - 1] * kxp[ap - 1] for ap in range(1, xp.rank + 1) for a in range(1, r + 1))

    def vertex(a: int, ap: int) -> int:
        return (ap - 1) * r + a

    arrows = []
    for ap in range(1, xp.rank + 1):
        for a, b in x.edges:
            v, w = vertex(a, ap), vertex(b, ap)
            arrows.append((v, w, 1) if kappa[v - 1] < 0 else (w, v, 1))
    for a in range(1, r + 1):
        for ap, bp in xp.edges:
            v, w = vertex(a, ap), vertex(a, bp)
            arrows.append((v, w, 1) if kappa[v - 1] > 0 else (w, v, 1))
    return BipartiteQuiver(x, xp, kappa, Quiver.from_arrows(r * xp.rank, arrows))


def build_bipartite_word(x, xp, kappa_first: int = 1, composite_steps: int | None = None) -> MutationWord:
    """
    μ₊ μ₋ μ₊ ... flattened into single mutations, each block in index order, for
    composite_steps composite mutations (default the full period 2(h + h')).
    """
    bq = bipartite_quiver(x, xp, kappa_first)
    b = bq.matrix.array
    for part in (bq.v_plus, bq.v_minus):
        idx = [v - 1 for v in part]
        if np.any(b[np.ix_(idx, idx)]):
            raise ValueError(f"Q({bq.x.name}, {bq.xp.name}) has arrows inside a sign class")
    steps = bq.full_period if composite_steps is None else composite_steps
    dirs: list[int] = []
    for u in range(steps):
        dirs.extend(bq.block(u))
    logger.debug("bipartite word for (%s, %s): %d composite steps, %d mutations",
                 bq.x.name, bq.xp.name, steps, len(dirs))
    return MutationWord.of(bq.matrix, dirs)
