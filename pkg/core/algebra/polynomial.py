"""
ClusterDilog — Exact Multivariate Polynomials

Polynomials in y1..yn with rational coefficients, stored as sympy PolyElement
values of a graded-lexicographic PolyRing over QQ. The ring for each rank is
created once and shared, so polynomials of equal rank always interoperate.
"""

import logging
from fractions import Fraction
from functools import lru_cache

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, PolyRing, ring

from core.errors import NonDivisible

logger = logging.getLogger(__name__)

ExpVector = tuple[int, ...]
MultiPoly = PolyElement


@lru_cache(maxsize=None)
def poly_ring(n: int) -> PolyRing:
    """Return the shared ring QQ[y1..yn] with graded lex order."""
    if n < 1:
        raise ValueError(f"polynomial rank must be positive, got {n}")
    names = ",".join(f"y{i}" for i in range(1, n + 1))
    return ring(names, QQ, grlex)[0]


def zero_vector(n: int) -> ExpVector:
    return (0,) * n


def unit_vector(n: int, i: int) -> ExpVector:
    """Basis vector e_i with a 0-based index."""
    return tuple(1 if j == i else 0 for j in range(n))


def degree(v: ExpVector) -> int:
    return sum(v)


def add_vectors(a: ExpVector, b: ExpVector) -> ExpVector:
    return tuple(x + y for x, y in zip(a, b))


def scale_vector(k: int, a: ExpVector) -> ExpVector:
    return tuple(k * x for x in a)


def qq(c):
    """Coerce int, Fraction or domain element into QQ."""
    if isinstance(c, Fraction):
        return QQ(c.numerator, c.denominator)
    if isinstance(c, int):
        return QQ(c)
    return QQ.convert(c)


def one(n: int) -> MultiPoly:
    return poly_ring(n).one


def monomial(exps: ExpVector, coeff=1) -> MultiPoly:
    """The term coeff * y^exps (exponents must be nonnegative)."""
    if any(e < 0 for e in exps):
        raise ValueError(f"polynomial monomial needs nonnegative exponents, got {exps}")
    R = poly_ring(len(exps))
    return R.from_dict({tuple(exps): qq(coeff)})


def from_terms(n: int, terms: dict) -> MultiPoly:
    """Build a polynomial from {exponent tuple: rational}."""
    R = poly_ring(n)
    return R.from_dict({tuple(m): qq(c) for m, c in terms.items() if c})


def generator(n: int, i: int) -> MultiPoly:
    """y_{i+1} in QQ[y1..yn] (0-based index)."""
    return poly_ring(n).gens[i]


def exact_div(num: MultiPoly, den: MultiPoly) -> MultiPoly:
    """
    Quotient of an exact polynomial division. Raises NonDivisible when the
    multivariate long division against graded-lex leading terms leaves a remainder.
    """
    if not den:
        raise NonDivisible("division by the zero polynomial")
    try:
        return num.exquo(den)
    except ExactQuotientFailed as exc:
        raise NonDivisible(f"{den.as_expr()} does not divide {num.as_expr()}") from exc


def constant_term(p: MultiPoly):
    return p.get(p.ring.zero_monom, QQ.zero)


def to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def canonical_terms(p: MultiPoly) -> list[tuple[ExpVector, Fraction]]:
    """Terms in canonical (descending graded lex) order."""
    return [(m, to_fraction(c)) for m, c in p.terms()]


def canonical_key(p: MultiPoly) -> tuple:
    """Hashable serialization; equal polynomials give equal keys."""
    return (p.ring.ngens, tuple((m, (int(c.numerator), int(c.denominator))) for m, c in p.terms()))


def tropical_min(p: MultiPoly) -> ExpVector:
    """Componentwise minimum of the exponents of a nonzero polynomial."""
    if not p:
        raise ValueError("tropicalization of the zero polynomial is undefined")
    monoms = list(p.keys())
    return tuple(min(m[i] for m in monoms) for i in range(p.ring.ngens))


def has_nonnegative_integer_coefficients(p: MultiPoly) -> bool:
    return all(c.denominator == 1 and c >= 0 for c in p.values())


def poly_to_json(p: MultiPoly) -> list:
    """[[exponents, numerator, denominator], ...] in canonical order."""
    return [[list(m), str(c.numerator), str(c.denominator)] for m, c in canonical_terms(p)]


def poly_from_json(data: list, n: int) -> MultiPoly:
    terms = {tuple(int(e) for e in m): Fraction(int(a), int(b)) for m, a, b in data}
    return from_terms(n, terms)


def format_poly(p: MultiPoly) -> str:
    return str(p.as_expr())
