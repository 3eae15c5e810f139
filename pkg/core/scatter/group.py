"""
ClusterDilog — Structure Group

The degree-truncated group G_Ω of a rational skew form Ω on N = Zⁿ. Elements
are stored through their action on power series in y1..yn,

    g(y_i) = y_i · u_i(y),   u_i a unit series kept up to total degree ℓ,

which is faithful when Ω is nonsingular. Products and equality are computed
on these images, so the Baker-Campbell-Hausdorff series is never expanded.

An element supported on one ray Q_{>0}·n0, exp(Σ_j a_j X_{j n0}), acts by
y^m ↦ y^m exp({n0, m} Σ_j j a_j y^{j n0}); such elements carry their log
coefficients and are applied through a univariate exponential.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

import sympy
from sympy.polys.domains import QQ

from core.algebra.polynomial import (
    ExpVector,
    MultiPoly,
    add_vectors,
    format_poly,
    poly_ring,
    qq,
    to_fraction,
    unit_vector,
    zero_vector,
)
from core.algebra.series import mul_trunc, pow_trunc, univariate_exp, univariate_poly
from core.errors import MixedContext, NonFactorizable, SingularOmega
from core.seed.matrix import SkewDecomposition

logger = logging.getLogger(__name__)

Omega = tuple[tuple[Fraction, ...], ...]


def as_omega(omega) -> Omega:
    """Normalise a SkewDecomposition or nested rows into a skew-symmetric rational form."""
    if isinstance(omega, SkewDecomposition):
        omega = omega.omega
    rows = tuple(tuple(Fraction(x) for x in row) for row in omega)
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise ValueError(f"skew form must be a nonempty square matrix, got {len(rows)} rows")
    for i in range(n):
        for j in range(i, n):
            if rows[i][j] != -rows[j][i]:
                raise ValueError(f"skew form is not skew-symmetric at ({i + 1},{j + 1})")
    return rows


def bracket(omega: Omega, n, m) -> Fraction:
    """{n, m}_Ω = nᵀ Ω m."""
    total = Fraction(0)
    for i, ni in enumerate(n):
        if ni:
            row = omega[i]
            for j, mj in enumerate(m):
                if mj and row[j]:
                    total += ni * mj * row[j]
    return total


@lru_cache(maxsize=None)
def is_singular(omega: Omega) -> bool:
    return sympy.Matrix(omega).det() == 0


def principal_omega(decomposition: SkewDecomposition) -> Omega:
    """[[Ω, -Δ⁻¹], [Δ⁻¹, 0]] on N ⊕ N, always nonsingular."""
    n = len(decomposition.delta)
    rows = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            rows[i][j] = Fraction(decomposition.omega[i][j])
        rows[i][n + i] = Fraction(-1, decomposition.delta[i])
        rows[n + i][i] = Fraction(1, decomposition.delta[i])
    return tuple(tuple(row) for row in rows)


def is_positive(n) -> bool:
    return all(x >= 0 for x in n) and any(x > 0 for x in n)


def primitive(n) -> tuple[ExpVector, int]:
    """(n0, h) with n = h·n0 and n0 primitive."""
    h = gcd(*(int(x) for x in n))
    if h == 0:
        raise ValueError("the zero vector has no primitive direction")
    return tuple(int(x) // h for x in n), h


@lru_cache(maxsize=8192)
def _ray_unit(n: int, n0: ExpVector, log_coeffs: tuple[Fraction, ...], k: Fraction, ell: int) -> MultiPoly:
    """exp(k Σ_j j a_j z^j) at z = y^{n0}, truncated at degree ell."""
    if k == 0:
        return poly_ring(n).one
    jmax = ell // sum(n0)
    coeffs = {j: k * j * a for j, a in enumerate(log_coeffs, start=1) if a}
    return univariate_poly(n, univariate_exp(coeffs, jmax), n0, ell)


@dataclass(frozen=True)
class RayLog:
    """log g = Σ_j coeffs[j-1] X_{j n0} for an element on the ray of n0."""

    n0: ExpVector
    coeffs: tuple[Fraction, ...]


@dataclass(frozen=True, eq=False)
class GroupElement:
    """An element of G_Ω mod degree > trunc, given by the unit parts of g(y_i)."""

    omega: Omega
    trunc: int
    images: tuple[MultiPoly, ...]
    ray: RayLog | None = field(default=None, compare=False)

    @classmethod
    def identity(cls, omega, ell: int) -> "GroupElement":
        omega = as_omega(omega)
        ring = poly_ring(len(omega))
        return cls(omega, ell, tuple(ring.one for _ in omega))

    @property
    def rank(self) -> int:
        return len(self.omega)

    def check_context(self, other: "GroupElement") -> None:
        if self.omega != other.omega:
            raise MixedContext("group elements over different skew forms")
        if self.trunc != other.trunc:
            raise MixedContext(f"group elements truncated at {self.trunc} and {other.trunc}")

    def is_identity(self) -> bool:
        return all(u == 1 for u in self.images)

    def _ray_act(self, m, q: MultiPoly) -> MultiPoly:
        n0, a = self.ray.n0, self.ray.coeffs
        ring = poly_ring(self.rank)
        base = bracket(self.omega, n0, m)
        groups: dict[Fraction, dict] = {}
        for t, c in q.items():
            k = base + bracket(self.omega, n0, t)
            groups.setdefault(k, {})[t] = c
        total = ring.zero
        for k, terms in groups.items():
            part = ring.from_dict(terms)
            total += part if k == 0 else mul_trunc(part, _ray_unit(self.rank, n0, a, k, self.trunc), self.trunc)
        return total

    def _substitute(self, m, q: MultiPoly) -> MultiPoly:
        ring = poly_ring(self.rank)
        ell = self.trunc
        cache: dict[tuple[int, int], MultiPoly] = {}

        def power(i: int, e: int) -> MultiPoly:
            if (i, e) not in cache:
                cache[(i, e)] = pow_trunc(self.images[i], e, ell)
            return cache[(i, e)]

        total = ring.zero
        for t, c in q.items():
            term = ring.from_dict({t: c})
            for i, e in enumerate(t):
                if e:
                    term = mul_trunc(term, power(i, e), ell)
            total += term
        prefix = ring.one
        for i, e in enumerate(m):
            if e:
                prefix = mul_trunc(prefix, power(i, int(e)), ell)
        return mul_trunc(prefix, total, ell)

    def act(self, m, q: MultiPoly | None = None) -> MultiPoly:
        """r with g(y^m · q) = y^m · r; m may have negative entries."""
        q = poly_ring(self.rank).one if q is None else q
        if self.ray is not None:
            return self._ray_act(m, q)
        return self._substitute(m, q)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        """Composition: (a * b)(f) = a(b(f))."""
        if not isinstance(other, GroupElement):
            return NotImplemented
        self.check_context(other)
        if self.ray is not None and other.ray is not None and self.ray.n0 == other.ray.n0:
            summed = {j: a + b for j, (a, b) in enumerate(zip(self.ray.coeffs, other.ray.coeffs), start=1)}
            return ray_element(self.ray.n0, summed, self.omega, self.trunc)
        n = self.rank
        images = tuple(self.act(unit_vector(n, i), other.images[i]) for i in range(n))
        return GroupElement(self.omega, self.trunc, images)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return group_eq(self, other)

    __hash__ = None

    def inverse(self) -> "GroupElement":
        if self.ray is not None:
            return ray_element(self.ray.n0, {j: -a for j, a in enumerate(self.ray.coeffs, start=1)},
                               self.omega, self.trunc)
        return (-lie_log(self)).exp(self.omega, self.trunc)

    def __pow__(self, k: int) -> "GroupElement":
        if self.ray is not None:
            return ray_element(self.ray.n0, {j: k * a for j, a in enumerate(self.ray.coeffs, start=1)},
                               self.omega, self.trunc)
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = GroupElement.identity(self.omega, self.trunc)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __str__(self) -> str:
        return "; ".join(f"y{i + 1} -> y{i + 1}·({format_poly(u)})" for i, u in enumerate(self.images))


def group_mul(a: GroupElement, b: GroupElement) -> GroupElement:
    return a * b


def group_eq(a: GroupElement, b: GroupElement) -> bool:
    a.check_context(b)
    return a.images == b.images


def ray_element(n0, log_coeffs: dict[int, Fraction], omega, ell: int) -> GroupElement:
    """exp(Σ_j a_j X_{j n0}) for a primitive positive n0; terms beyond degree ell are dropped."""
    omega = as_omega(omega)
    n0 = tuple(int(x) for x in n0)
    if len(n0) != len(omega) or not is_positive(n0):
        raise ValueError(f"ray direction {n0} is not a positive vector of rank {len(omega)}")
    if primitive(n0)[1] != 1:
        raise ValueError(f"ray direction {n0} is not primitive")
    jmax = ell // sum(n0)
    coeffs = tuple(Fraction(log_coeffs.get(j, 0)) for j in range(1, jmax + 1))
    n = len(omega)
    images = tuple(
        _ray_unit(n, n0, coeffs, bracket(omega, n0, unit_vector(n, i)), ell) for i in range(n)
    )
    return GroupElement(omega, ell, images, RayLog(n0, coeffs))


def psi_log(h: int, c, jmax: int) -> dict[int, Fraction]:
    """Log coefficients of Ψ[h·n0]^c on the ray of n0: c(-1)^{k+1}/k² at j = hk."""
    c = Fraction(c)
    return {h * k: c * Fraction((-1) ** (k + 1), k * k) for k in range(1, jmax // h + 1)}


def psi_element(n, c, omega, ell: int) -> GroupElement:
    """
    The dilogarithm element Ψ[n]^c, acting by y^m ↦ y^m (1 + y^n)^{c{n, m}}.
    A singular form has no faithful action; principal-extend it first.
    """
    omega = as_omega(omega)
    if is_singular(omega):
        raise SingularOmega("Ψ elements need a nonsingular skew form; use principal_omega")
    n = tuple(int(x) for x in n)
    if not is_positive(n):
        raise ValueError(f"Ψ[n] needs a positive vector, got {n}")
    n0, h = primitive(n)
    jmax = ell // sum(n0)
    return ray_element(n0, psi_log(h, c, jmax), omega, ell)


@dataclass(frozen=True)
class LieElement:
    """Σ c_n X_n over positive n with [X_n, X_m] = {n, m} X_{n+m}."""

    coeffs: dict[ExpVector, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for n in self.coeffs:
            if not is_positive(n):
                raise ValueError(f"Lie element support {n} is not positive")

    def __add__(self, other: "LieElement") -> "LieElement":
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, Fraction(0)) + c
        return LieElement({n: c for n, c in out.items() if c})

    def __neg__(self) -> "LieElement":
        return LieElement({n: -c for n, c in self.coeffs.items()})

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def scale(self, c) -> "LieElement":
        c = Fraction(c)
        return LieElement({n: c * v for n, v in self.coeffs.items() if c * v})

    def is_zero(self) -> bool:
        return not any(self.coeffs.values())

    def degree_part(self, d: int) -> "LieElement":
        return LieElement({n: c for n, c in self.coeffs.items() if sum(n) == d})

    def truncated(self, ell: int) -> "LieElement":
        return LieElement({n: c for n, c in self.coeffs.items() if sum(n) <= ell})

    def bracket(self, other: "LieElement", omega, ell: int) -> "LieElement":
        omega = as_omega(omega)
        out: dict[ExpVector, Fraction] = {}
        for n, c in self.coeffs.items():
            for m, d in other.coeffs.items():
                if sum(n) + sum(m) > ell:
                    continue
                b = bracket(omega, n, m)
                if b:
                    key = add_vectors(n, m)
                    out[key] = out.get(key, Fraction(0)) + b * c * d
        return LieElement({n: c for n, c in out.items() if c})

    def exp(self, omega, ell: int) -> GroupElement:
        """Exp of the derivation X̃(y^m) = Σ c_n {n, m} y^{m+n}, applied to every y_i."""
        omega = as_omega(omega)
        n = len(omega)
        terms = [(v, c) for v, c in self.coeffs.items() if c and sum(v) <= ell]
        origin = zero_vector(n)
        images = []
        for i in range(n):
            e_i = unit_vector(n, i)
            total: dict[ExpVector, Fraction] = {origin: Fraction(1)}
            current = dict(total)
            for k in range(1, ell + 1):
                nxt: dict[ExpVector, Fraction] = {}
                for t, ct in current.items():
                    dt = sum(t)
                    for v, cv in terms:
                        if dt + sum(v) > ell:
                            continue
                        b = bracket(omega, v, add_vectors(e_i, t))
                        if b:
                            key = add_vectors(t, v)
                            nxt[key] = nxt.get(key, Fraction(0)) + ct * cv * b / k
                current = {m: c for m, c in nxt.items() if c}
                if not current:
                    break
                for m, c in current.items():
                    total[m] = total.get(m, Fraction(0)) + c
            images.append(poly_ring(n).from_dict({m: qq(c) for m, c in total.items() if c}))
        return GroupElement(omega, ell, tuple(images))


def leading_discrepancy(target: GroupElement, approx: GroupElement) -> tuple[int, LieElement] | None:
    """
    Lowest degree d where the images differ, and the degree-d Lie element ξ with
    target = approx · exp(ξ + higher). None when the elements agree.
    """
    target.check_context(approx)
    omega = target.omega
    n = target.rank
    diffs = [a - b for a, b in zip(target.images, approx.images)]
    degrees = [sum(m) for p in diffs for m, c in p.items() if c]
    if not degrees:
        return None
    d = min(degrees)
    support = sorted({m for p in diffs for m, c in p.items() if c and sum(m) == d})
    found: dict[ExpVector, Fraction] = {}
    for v in support:
        values = [to_fraction(p.get(v, QQ.zero)) for p in diffs]
        brackets = [bracket(omega, v, unit_vector(n, i)) for i in range(n)]
        pivot = next((i for i, b in enumerate(brackets) if b), None)
        if pivot is None:
            raise SingularOmega(f"{v} lies in the kernel of the skew form")
        c = values[pivot] / brackets[pivot]
        if any(values[i] != c * brackets[i] for i in range(n)):
            raise NonFactorizable(f"degree-{d} discrepancy at {v} is not the action of a Lie element")
        if c:
            found[v] = c
    return d, LieElement(found)


def lie_log(g: GroupElement) -> LieElement:
    """log g mod degree > trunc, corrected one degree at a time."""
    log = LieElement()
    while True:
        found = leading_discrepancy(g, log.exp(g.omega, g.trunc))
        if found is None:
            return log
        _, part = found
        log = log + part
