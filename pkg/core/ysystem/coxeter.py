"""
ClusterDilog — Coxeter Orbits

Simple reflections s_a(v) = v - (α_a, v) α_a of a simply-laced root system in
the simple-root basis, the bipartite products s₊ and s₋, and the roots
α(a; k) obtained by alternating them. The orbits predict the tropical
Y-system and are computed twice: by reflections and by the recursion
α(a; k+1) + α(a; k-1) = Σ_{b~a} α(b; k).
"""

import logging
from functools import reduce

import numpy as np

from core.errors import VerificationError
from core.seed.dynkin import DynkinType
from core.ysystem.bipartite import as_dynkin, dynkin_signs, require_simply_laced

logger = logging.getLogger(__name__)

RootVector = tuple[int, ...]


def simple_reflection(t: DynkinType, a: int) -> np.ndarray:
    """Matrix of s_a acting on coordinate columns."""
    cartan = t.cartan_matrix()
    out = np.eye(t.rank, dtype=np.int64)
    out[a - 1, :] -= cartan[a - 1, :]
    return out


def sign_reflection(t: DynkinType, sign: int, kappa_first: int = 1) -> np.ndarray:
    """s₊ or s₋: the commuting product of s_a over κ_a = sign."""
    kappa = dynkin_signs(t, kappa_first)
    factors = [simple_reflection(t, a) for a in range(1, t.rank + 1) if kappa[a - 1] == sign]
    return reduce(np.matmul, factors, np.eye(t.rank, dtype=np.int64))


def alternating_power(first: np.ndarray, second: np.ndarray, k: int) -> np.ndarray:
    """first applied, then second, then first, ... k factors in total."""
    out = np.eye(first.shape[0], dtype=np.int64)
    for i in range(k):
        out = (first if i % 2 == 0 else second) @ out
    return out


def _orbit_by_reflections(t: DynkinType, a: int, kappa: tuple[int, ...], kappa_first: int) -> list[RootVector]:
    sign_a = kappa[a - 1]
    first = sign_reflection(t, -sign_a, kappa_first)
    second = sign_reflection(t, sign_a, kappa_first)
    root = np.zeros(t.rank, dtype=np.int64)
    root[a - 1] = 1
    orbit = [tuple(int(v) for v in -root)]
    current = root
    orbit.append(tuple(int(v) for v in current))
    for k in range(t.coxeter_number):
        current = (first if k % 2 == 0 else second) @ current
        orbit.append(tuple(int(v) for v in current))
    return orbit


def orbits_by_recursion(t: DynkinType) -> dict[int, list[RootVector]]:
    """α(a; -1..h) for every a from α(a; -1) = -α_a, α(a; 0) = α_a and the recursion."""
    rows = {a: [-np.eye(t.rank, dtype=np.int64)[a - 1], np.eye(t.rank, dtype=np.int64)[a - 1]]
            for a in range(1, t.rank + 1)}
    for k in range(t.coxeter_number):
        for a in range(1, t.rank + 1):
            total = sum((rows[b][k + 1] for b in t.neighbours(a)), np.zeros(t.rank, dtype=np.int64))
            rows[a].append(total - rows[a][k])
    return {a: [tuple(int(v) for v in vec) for vec in vecs] for a, vecs in rows.items()}


def coxeter_orbit(x, a: int, kappa_first: int = 1) -> list[RootVector]:
    """
    [α(a; -1), α(a; 0), ..., α(a; h)]; reflections and recursion must agree, the
    middle roots must be positive and the orbit must end at ±α_{ω(a)}.
    """
    t = as_dynkin(x)
    require_simply_laced(t)
    if not 1 <= a <= t.rank:
        raise IndexError(f"vertex {a} outside 1..{t.rank}")
    kappa = dynkin_signs(t, kappa_first)
    orbit = _orbit_by_reflections(t, a, kappa, kappa_first)
    if orbit != orbits_by_recursion(t)[a]:
        raise VerificationError(f"reflection and recursion orbits of α_{a} in {t.name} differ")
    h = t.coxeter_number
    for k, root in enumerate(orbit[1:h + 1]):
        if min(root) < 0:
            raise VerificationError(f"α({a};{k}) = {root} in {t.name} is not positive")
    target = tuple(1 if b == t.omega[a - 1] else 0 for b in range(1, t.rank + 1))
    if orbit[h] != target or orbit[h + 1] != tuple(-v for v in target):
        raise VerificationError(f"orbit of α_{a} in {t.name} does not end at ±α_ω(a)")
    logger.debug("orbit of α_%d in %s: %s", a, t.name, orbit)
    return orbit


def longest_element_check(x, kappa_first: int = 1) -> bool:
    """(s₋s₊)^{h/2} = (s₊s₋)^{h/2} = w₀ with w₀(α_a) = -α_{ω(a)}."""
    t = as_dynkin(x)
    require_simply_laced(t)
    s_plus = sign_reflection(t, 1, kappa_first)
    s_minus = sign_reflection(t, -1, kappa_first)
    h = t.coxeter_number
    w0 = np.zeros((t.rank, t.rank), dtype=np.int64)
    for a in range(1, t.rank + 1):
        w0[t.omega[a - 1] - 1, a - 1] = -1
    left = alternating_power(s_minus, s_plus, h)
    right = alternating_power(s_plus, s_minus, h)
    return bool(np.array_equal(left, w0) and np.array_equal(right, w0))


def format_root(root: RootVector) -> str:
    """Support of a root in the bracket notation, e.g. [1,3] for α1+α2+α3."""
    sign = "-" if min(root) < 0 else ""
    terms = [f"{abs(c)}α{i + 1}" if abs(c) > 1 else f"α{i + 1}" for i, c in enumerate(root) if c]
    return sign + "(" + "+".join(terms) + ")"
