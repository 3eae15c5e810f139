"""
ClusterDilog — Truncated Power Series

Commutative power series in y1..yn truncated at total degree ell. A series is a
PolyElement whose terms all have degree <= ell; products, inverses, powers,
exp and log drop everything above ell.
"""

from fractions import Fraction

from sympy.polys.domains import QQ

from core.algebra.polynomial import MultiPoly, constant_term, poly_ring, qq
from core.errors import NonUnit


def truncate(p: MultiPoly, ell: int) -> MultiPoly:
    return p.ring.from_dict({m: c for m, c in p.items() if sum(m) <= ell})


def mul_trunc(a: MultiPoly, b: MultiPoly, ell: int) -> MultiPoly:
    """Product of two series with terms above degree ell discarded."""
    acc: dict = {}
    b_terms = [(mb, cb, sum(mb)) for mb, cb in b.items()]
    for ma, ca in a.items():
        da = sum(ma)
        if da > ell:
            continue
        for mb, cb, db in b_terms:
            if da + db > ell:
                continue
            m = tuple(x + y for x, y in zip(ma, mb))
            acc[m] = acc.get(m, QQ.zero) + ca * cb
    return a.ring.from_dict({m: c for m, c in acc.items() if c})


def inv_trunc(u: MultiPoly, ell: int) -> MultiPoly:
    """Inverse of a series with nonzero constant term."""
    c0 = constant_term(u)
    if not c0:
        raise NonUnit("series without constant term has no inverse")
    R = u.ring
    w = truncate(u * R(1 / c0), ell) - R.one
    result, term = R.one, R.one
    for _ in range(ell):
        term = mul_trunc(term, -w, ell)
        if not term:
            break
        result = result + term
    return result * R(1 / c0)


def pow_trunc(u: MultiPoly, k: int, ell: int) -> MultiPoly:
    """u**k for any integer k (negative powers need a unit)."""
    base = inv_trunc(u, ell) if k < 0 else truncate(u, ell)
    k = abs(k)
    result = u.ring.one
    while k:
        if k & 1:
            result = mul_trunc(result, base, ell)
        k >>= 1
        if k:
            base = mul_trunc(base, base, ell)
    return result


def exp_trunc(w: MultiPoly, ell: int) -> MultiPoly:
    """exp(w) for a series without constant term."""
    if constant_term(w):
        raise ValueError("exp_trunc needs a series without constant term")
    R = w.ring
    result, term = R.one, R.one
    for k in range(1, ell + 1):
        term = mul_trunc(term, w, ell) * R(QQ(1, k))
        if not term:
            break
        result = result + term
    return result


def log_trunc(u: MultiPoly, ell: int) -> MultiPoly:
    """log(u) for a series with constant term 1."""
    if constant_term(u) != 1:
        raise NonUnit("log_trunc needs constant term 1")
    R = u.ring
    w = truncate(u, ell) - R.one
    result, term = R.zero, R.one
    for k in range(1, ell + 1):
        term = mul_trunc(term, w, ell)
        if not term:
            break
        result = result + term * R(QQ((-1) ** (k + 1), k))
    return result


def univariate_exp(coeffs: dict[int, Fraction], ell: int) -> list:
    """
    Coefficients e_0..e_ell of exp(sum_j a_j z^j) for a univariate series
    with a_0 = 0, from the recurrence m e_m = sum_j j a_j e_{m-j}.
    """
    a = [QQ.zero] * (ell + 1)
    for j, c in coeffs.items():
        if 1 <= j <= ell:
            a[j] = qq(c)
    e = [QQ.zero] * (ell + 1)
    e[0] = QQ.one
    for m in range(1, ell + 1):
        total = QQ.zero
        for j in range(1, m + 1):
            if a[j]:
                total += j * a[j] * e[m - j]
        e[m] = total / m
    return e


def univariate_poly(n: int, coeffs: list, direction: tuple[int, ...], ell: int) -> MultiPoly:
    """Substitute z = y^direction into sum_j coeffs[j] z^j, truncated at ell."""
    d = sum(direction)
    terms = {}
    for j, c in enumerate(coeffs):
        if c and j * d <= ell:
            terms[tuple(j * x for x in direction)] = c
    return poly_ring(n).from_dict(terms)
