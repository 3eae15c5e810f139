"""
ClusterDilog — Rank-2 Scattering Diagrams

For B = [[0, -δ1], [δ2, 0]] = ΔΩ with Ω = [[0, -1], [1, 0]] the consistent
scattering diagram is read off from the ordered factorization of
Ψ[e2]^{δ2} Ψ[e1]^{δ1}: the two outer rays give the incoming walls e1⊥ and
e2⊥, every ray n0 in between an outgoing wall supported on R≥0·(-B n0).

The plane M_R is identified with R² through the basis e_i*/δ_i, so the
pairing is ⟨n, z⟩ = n1 z1/δ1 + n2 z2/δ2 and G-cones live in the same
coordinates as the walls.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from core.algebra.polynomial import ExpVector
from core.errors import VerificationError
from core.pattern.engine import mutate_c, mutate_g
from core.pattern.periodicity import permutation_of
from core.scatter.factorize import (
    DilogFactor,
    check_positive_realization,
    format_product,
    group_log_factorize,
)
from core.scatter.group import GroupElement, Omega, as_omega, primitive, psi_element, psi_log, ray_element
from core.seed.catalog import rank2_matrix
from core.seed.matrix import mutate_array
from core.settings import setting
from models.cdl_models import DiagramReport, WallModel, format_rational

logger = logging.getLogger(__name__)

RANK2_OMEGA: Omega = as_omega([[0, -1], [1, 0]])

Direction = tuple[int, int]


def primitive_direction(z) -> Direction:
    g = gcd(int(z[0]), int(z[1]))
    if g == 0:
        raise ValueError("the origin has no direction")
    return int(z[0]) // g, int(z[1]) // g


def outgoing_direction(n, delta) -> Direction:
    """Primitive direction of -B n = (δ1 n2, -δ2 n1)."""
    return primitive_direction((delta[0] * n[1], -delta[1] * n[0]))


def normal_of_direction(z, delta) -> ExpVector:
    """Primitive n with -B n on the ray through z."""
    return primitive((-z[1] * delta[0], z[0] * delta[1]))[0]


@dataclass(frozen=True)
class Wall:
    """A wall with primitive normal n0 and element Π Ψ[h n0]^s; incoming walls are whole lines."""

    normal: ExpVector
    ray: Direction
    factors: tuple[DilogFactor, ...]
    incoming: bool = False

    def contains(self, direction: Direction) -> bool:
        if direction == self.ray:
            return True
        return self.incoming and direction == (-self.ray[0], -self.ray[1])

    def log_coeffs(self, ell: int) -> dict[int, Fraction]:
        jmax = ell // sum(self.normal)
        total: dict[int, Fraction] = {}
        for f in self.factors:
            h = primitive(f.n)[1]
            for j, c in psi_log(h, f.exponent, jmax).items():
                total[j] = total.get(j, Fraction(0)) + c
        return total

    def element(self, omega: Omega, ell: int) -> GroupElement:
        return ray_element(self.normal, self.log_coeffs(ell), omega, ell)

    def to_model(self) -> WallModel:
        return WallModel(
            normal=list(self.normal),
            ray=list(self.ray),
            element=format_product(self.factors),
            factors=[(list(f.n), format_rational(f.exponent)) for f in self.factors],
        )


@dataclass(frozen=True)
class Rank2Diagram:
    """Walls of the consistent diagram of (δ1, δ2) up to degree trunc."""

    delta: tuple[int, int]
    trunc: int
    walls: tuple[Wall, ...]
    omega: Omega = RANK2_OMEGA

    def pairing(self, n, z) -> Fraction:
        """⟨n, z⟩ = nᵀ Δ⁻¹ z."""
        return Fraction(n[0] * z[0], self.delta[0]) + Fraction(n[1] * z[1], self.delta[1])

    def wall_at(self, direction) -> Wall:
        direction = primitive_direction(direction)
        for wall in self.walls:
            if wall.contains(direction):
                return wall
        raise ValueError(f"no wall of the ({self.delta[0]},{self.delta[1]}) diagram lies on {direction}")

    def crossing_sign(self, direction, orientation: int = 1) -> int:
        """Intersection sign of a counterclockwise (orientation +1) crossing of the ray."""
        wall = self.wall_at(direction)
        velocity = (-orientation * direction[1], orientation * direction[0])
        return 1 if self.pairing(wall.normal, velocity) < 0 else -1

    @property
    def outgoing(self) -> tuple[Wall, ...]:
        return tuple(w for w in self.walls if not w.incoming)


def build_rank2_csd(delta, ell: int | None = None) -> Rank2Diagram:
    """
    Consistent diagram for B = [[0, -δ1], [δ2, 0]] mod degree > ell. Wall
    exponents are checked to be positive multiples of δ(h n).
    """
    d1, d2 = (int(x) for x in delta)
    if d1 < 1 or d2 < 1:
        raise ValueError(f"δ must be positive, got ({d1}, {d2})")
    ell = setting("scatter", "degree", 12) if ell is None else ell
    g = psi_element((0, 1), d2, RANK2_OMEGA, ell) * psi_element((1, 0), d1, RANK2_OMEGA, ell)
    walls = []
    for n0, factors in group_log_factorize(g, order="ordered"):
        check_positive_realization(factors, (d1, d2))
        if n0 in ((1, 0), (0, 1)):
            expected = d1 if n0 == (1, 0) else d2
            if [(f.n, f.exponent) for f in factors] != [(n0, expected)]:
                raise VerificationError(f"incoming wall {n0} carries {format_product(factors)}")
            ray = (0, 1) if n0 == (1, 0) else (1, 0)
            walls.append(Wall(n0, ray, tuple(factors), incoming=True))
        else:
            walls.append(Wall(n0, outgoing_direction(n0, (d1, d2)), tuple(factors)))
    walls.sort(key=lambda w: (not w.incoming, -Fraction(w.normal[0], w.normal[1]) if w.normal[1] else 0))
    logger.info("CSD (%d,%d) to degree %d: %d outgoing walls", d1, d2, ell, len(walls) - 2)
    return Rank2Diagram((d1, d2), ell, tuple(walls))


def wall_crossings_for_loop(d: Rank2Diagram) -> list[tuple[Direction, int]]:
    """A counterclockwise loop from the positive chamber: (support direction, intersection sign)."""
    outgoing = sorted((w.ray for w in d.outgoing), key=lambda r: Fraction(r[1], r[0]))
    directions = [(0, 1), (-1, 0), (0, -1), *outgoing, (1, 0)]
    return [(r, d.crossing_sign(r)) for r in directions]


def path_ordered_product(d: Rank2Diagram, crossings) -> GroupElement:
    """g_s^{ε_s} ⋯ g_1^{ε_1} for crossings [(direction, ε), ...] in the order crossed."""
    elements: dict[ExpVector, GroupElement] = {}
    result = GroupElement.identity(d.omega, d.trunc)
    for direction, sign in crossings:
        if sign not in (1, -1):
            raise ValueError(f"intersection sign must be ±1, got {sign}")
        wall = d.wall_at(direction)
        if wall.normal not in elements:
            elements[wall.normal] = wall.element(d.omega, d.trunc)
        g = elements[wall.normal]
        result = (g if sign == 1 else g.inverse()) * result
    return result


def is_consistent(d: Rank2Diagram) -> bool:
    return path_ordered_product(d, wall_crossings_for_loop(d)).is_identity()


def diagram_report(d: Rank2Diagram) -> DiagramReport:
    return DiagramReport(
        delta=list(d.delta),
        degree=d.trunc,
        walls=[w.to_model() for w in d.walls],
        consistent=is_consistent(d),
    )


def g_fan_rays(delta, max_steps: int | None = None) -> set[Direction]:
    """Primitive g-vector directions met by both alternating words, stopping at a period."""
    max_steps = setting("scatter", "gfan_steps", 12) if max_steps is None else max_steps
    matrix = rank2_matrix(*delta)
    b0 = matrix.array
    rays: set[Direction] = {(1, 0), (0, 1)}
    for first in (1, 2):
        b, c, g = b0, np.eye(2, dtype=np.int64), np.eye(2, dtype=np.int64)
        for s in range(max_steps):
            k0 = (first - 1 + s) % 2
            g = mutate_g(g, b, b0, c, k0)
            c = mutate_c(c, b, k0)
            b = mutate_array(b, k0)
            rays.update(primitive_direction(g[:, j]) for j in range(2))
            if permutation_of(c) is not None:
                break
    return rays


def g_fan_embedding_check(delta, ell: int | None = None, max_steps: int | None = None) -> bool:
    """
    Every G-fan ray whose wall normal has degree <= ell lies on a wall support;
    for finite type (δ1 δ2 <= 3) the two sets of rays coincide.
    """
    d = build_rank2_csd(delta, ell)
    supports: set[Direction] = set()
    for wall in d.walls:
        supports.add(wall.ray)
        if wall.incoming:
            supports.add((-wall.ray[0], -wall.ray[1]))
    rays = g_fan_rays(delta, max_steps)
    for r in rays:
        if r[0] * r[1] != 0 and sum(normal_of_direction(r, d.delta)) > d.trunc:
            continue
        if r not in supports:
            logger.warning("G-fan ray %s of (%d,%d) is not a wall support", r, *d.delta)
            return False
    if d.delta[0] * d.delta[1] <= 3 and rays != supports:
        logger.warning("finite-type G-fan %s differs from the supports %s", sorted(rays), sorted(supports))
        return False
    return True
