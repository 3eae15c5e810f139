"""
ClusterDilog — q-Commutative Laurent Algebra

Elements Σ c_o Y^{shift+o} of the completed quantum torus of a skew form Ω.
Monomials are normalized, Y^n Y^m = q^{{n,m}} Y^{n+m}, so Y^n Y^m = q^{2{n,m}}
Y^m Y^n. Offsets o are nonnegative and known up to total degree `trunc`;
the shift may have negative entries and is kept componentwise minimal.

A product of two elements is known up to the smaller of the two windows.
Moving the shift down widens the window by the amount moved, so nothing is
lost when an element is realigned for addition.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from sympy.polys.fields import FracElement

from core.algebra.polynomial import ExpVector, add_vectors, degree, unit_vector, zero_vector
from core.errors import MixedContext, NonPositiveArgument, NonUnit, TruncationLoss
from core.quantum.qnumbers import QCoeff, QField, T, at_q_one, coeff, format_coeff, q_pochhammer, q_power, root_order
from core.scatter.group import Omega, as_omega, bracket
from core.settings import setting

logger = logging.getLogger(__name__)

Scalar = int | Fraction | FracElement


def _sub(a: ExpVector, b: ExpVector) -> ExpVector:
    return tuple(x - y for x, y in zip(a, b))


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, FracElement))


@dataclass(frozen=True)
class QContext:
    """A skew form Ω and a root order d; coefficients live in Q(q^{1/d})."""

    omega: Omega
    d: int

    @classmethod
    def of(cls, omega, *rationals, d: int | None = None) -> "QContext":
        """Smallest admissible d for Ω and for every extra exponent of q given."""
        omega = as_omega(omega)
        need = root_order(*(x for row in omega for x in row), *rationals)
        if d is None:
            d = need
        elif d % need:
            raise ValueError(f"root order {d} is not a multiple of {need}")
        return cls(omega, d)

    @classmethod
    def for_matrix(cls, matrix, d: int | None = None) -> "QContext":
        """Context of B = ΔΩ in which every q_i = q^{1/δ_i} exists."""
        decomposition = matrix.decomposition()
        return cls.of(decomposition.omega, *(Fraction(1, x) for x in decomposition.delta), d=d)

    @property
    def rank(self) -> int:
        return len(self.omega)

    def bracket(self, n, m) -> Fraction:
        return bracket(self.omega, n, m)

    def row(self, v) -> tuple[Fraction, ...]:
        """vᵀΩ, so that {v, w} = Σ row[i] w[i]."""
        return tuple(
            sum((v[i] * self.omega[i][j] for i in range(self.rank) if v[i]), Fraction(0)) for j in range(self.rank)
        )

    def q(self, x=1) -> QCoeff:
        return q_power(x, self.d)

    def zero(self, trunc: int) -> "QLaurentElement":
        return QLaurentElement(self, zero_vector(self.rank), {}, trunc)

    def monomial(self, m, trunc: int, c: Scalar = 1) -> "QLaurentElement":
        c = coeff(c)
        terms = {zero_vector(self.rank): c} if c else {}
        return QLaurentElement(self, tuple(int(x) for x in m), terms, trunc)

    def one(self, trunc: int) -> "QLaurentElement":
        return self.monomial(zero_vector(self.rank), trunc)

    def generator(self, i: int, trunc: int) -> "QLaurentElement":
        """Y_i, 1-based."""
        if not 1 <= i <= self.rank:
            raise IndexError(f"generator {i} outside 1..{self.rank}")
        return self.monomial(unit_vector(self.rank, i - 1), trunc)

    def element(self, terms: dict, trunc: int) -> "QLaurentElement":
        return QLaurentElement.build(self, terms, trunc)


@dataclass(frozen=True, eq=False)
class QLaurentElement:
    """Σ terms[o] Y^{shift+o}, exact for offsets of total degree ≤ trunc."""

    ctx: QContext
    shift: ExpVector
    terms: dict
    trunc: int

    @classmethod
    def build(cls, ctx: QContext, full_terms: dict, trunc: int, shift=None) -> "QLaurentElement":
        """From {exponent: coefficient}; the shift defaults to the componentwise minimum."""
        items = {tuple(int(x) for x in e): coeff(c) for e, c in full_terms.items()}
        items = {e: c for e, c in items.items() if c}
        if shift is None:
            shift = tuple(min(e[i] for e in items) for i in range(ctx.rank)) if items else zero_vector(ctx.rank)
        shift = tuple(int(x) for x in shift)
        terms = {}
        for e, c in items.items():
            o = _sub(e, shift)
            if min(o, default=0) < 0:
                raise ValueError(f"exponent {e} lies below the shift {shift}")
            if degree(o) <= trunc:
                terms[o] = c
        return cls(ctx, shift, terms, trunc)

    @property
    def rank(self) -> int:
        return self.ctx.rank

    def full_terms(self) -> dict[ExpVector, QCoeff]:
        return {add_vectors(self.shift, o): c for o, c in self.terms.items()}

    def check_context(self, other: "QLaurentElement") -> None:
        if self.ctx != other.ctx:
            raise MixedContext("elements of different quantum tori were combined")

    def _coerce(self, other) -> "QLaurentElement":
        if isinstance(other, QLaurentElement):
            self.check_context(other)
            return other
        if _is_scalar(other):
            return self.ctx.monomial(zero_vector(self.rank), self.trunc + sum(abs(x) for x in self.shift), other)
        raise TypeError(f"cannot combine a quantum Laurent element with {type(other).__name__}")

    def realigned(self, shift) -> "QLaurentElement":
        """The same element written over a smaller shift."""
        delta = _sub(self.shift, shift)
        if min(delta, default=0) < 0:
            raise ValueError(f"shift {shift} is not below {self.shift}")
        terms = {add_vectors(o, delta): c for o, c in self.terms.items()}
        return QLaurentElement(self.ctx, tuple(shift), terms, self.trunc + degree(delta))

    def normalized(self) -> "QLaurentElement":
        """Raise the shift to the componentwise minimum of the support."""
        if not self.terms:
            return self
        low = tuple(min(o[i] for o in self.terms) for i in range(self.rank))
        if not any(low):
            return self
        trunc = self.trunc - degree(low)
        if trunc < 0:
            raise TruncationLoss(f"support starts at {add_vectors(self.shift, low)}, beyond the window of degree {self.trunc}")
        terms = {_sub(o, low): c for o, c in self.terms.items()}
        return QLaurentElement(self.ctx, add_vectors(self.shift, low), terms, trunc)

    def cut(self, ell: int) -> "QLaurentElement":
        """Realign to shift 0 and drop offsets above ell; needs a nonnegative shift."""
        x = self.realigned(zero_vector(self.rank))
        trunc = min(x.trunc, ell)
        return QLaurentElement(self.ctx, x.shift, {o: c for o, c in x.terms.items() if degree(o) <= trunc}, trunc)

    def __add__(self, other) -> "QLaurentElement":
        other = self._coerce(other)
        shift = tuple(min(a, b) for a, b in zip(self.shift, other.shift))
        a, b = self.realigned(shift), other.realigned(shift)
        trunc = min(a.trunc, b.trunc)
        terms = {o: c for o, c in a.terms.items() if degree(o) <= trunc}
        for o, c in b.terms.items():
            if degree(o) <= trunc:
                terms[o] = terms.get(o, QField.zero) + c
        terms = {o: c for o, c in terms.items() if c}
        return QLaurentElement(self.ctx, shift, terms, trunc).normalized()

    __radd__ = __add__

    def __neg__(self) -> "QLaurentElement":
        return self.scale(-1)

    def __sub__(self, other) -> "QLaurentElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "QLaurentElement":
        return self._coerce(other) + (-self)

    def scale(self, c: Scalar) -> "QLaurentElement":
        c = coeff(c)
        if not c:
            return QLaurentElement(self.ctx, self.shift, {}, self.trunc)
        return QLaurentElement(self.ctx, self.shift, {o: v * c for o, v in self.terms.items()}, self.trunc)

    def __mul__(self, other) -> "QLaurentElement":
        if _is_scalar(other):
            return self.scale(other)
        if not isinstance(other, QLaurentElement):
            return NotImplemented
        self.check_context(other)
        ctx, trunc = self.ctx, min(self.trunc, other.trunc)
        right = [(p, c, degree(p), add_vectors(other.shift, p)) for p, c in other.terms.items()]
        acc: dict[ExpVector, QCoeff] = {}
        for o, a in self.terms.items():
            do = degree(o)
            if do > trunc:
                continue
            row = ctx.row(add_vectors(self.shift, o))
            for p, b, dp, full in right:
                if do + dp > trunc:
                    continue
                e = ctx.d * sum((r * x for r, x in zip(row, full) if r and x), Fraction(0))
                key = add_vectors(o, p)
                acc[key] = acc.get(key, QField.zero) + a * b * T ** int(e)
        terms = {k: v for k, v in acc.items() if v}
        return QLaurentElement(ctx, add_vectors(self.shift, other.shift), terms, trunc).normalized()

    def __rmul__(self, other) -> "QLaurentElement":
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def inverse(self) -> "QLaurentElement":
        """Y^s u with u = c0(1 + w) inverts to c0⁻¹ Σ (-w)^k · Y^{-s}."""
        x = self.normalized()
        ctx, n = x.ctx, x.rank
        origin = zero_vector(n)
        c0 = x.terms.get(origin)
        if not c0:
            raise NonUnit(f"no invertible leading term at Y^{x.shift}")
        row = ctx.row(x.shift)
        w_terms = {}
        for o, c in x.terms.items():
            if any(o):
                twist = -ctx.d * sum((r * e for r, e in zip(row, o) if r and e), Fraction(0))
                w_terms[o] = c * T ** int(twist) / c0
        w = QLaurentElement(ctx, origin, w_terms, x.trunc)
        total = power = ctx.one(x.trunc)
        for _ in range(x.trunc):
            power = -(power * w)
            if power.is_zero():
                break
            total = total + power
        return total.scale(1 / c0) * ctx.monomial(tuple(-e for e in x.shift), total.trunc)

    def __pow__(self, k: int) -> "QLaurentElement":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = self.ctx.one(base.trunc)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return not any(self.terms.values())

    def is_one(self) -> bool:
        return (self - 1).is_zero()

    def __eq__(self, other) -> bool:
        if not (isinstance(other, QLaurentElement) or _is_scalar(other)):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def is_positive(self) -> bool:
        """Every exponent nonnegative and nonzero; the domain of the q-series."""
        full = self.full_terms()
        return bool(full) and all(min(e) >= 0 and any(e) for e in full)

    def coefficient(self, e) -> QCoeff:
        o = _sub(tuple(e), self.shift)
        if min(o, default=0) < 0:
            return QField.zero
        if degree(o) > self.trunc:
            raise TruncationLoss(f"Y^{tuple(e)} lies outside the window of degree {self.trunc}")
        return self.terms.get(o, QField.zero)

    def in_window(self, e) -> bool:
        o = _sub(tuple(e), self.shift)
        return min(o, default=0) >= 0 and degree(o) <= self.trunc

    def specialize(self) -> dict[ExpVector, Fraction]:
        """Coefficients at q = 1; a pole raises LimitMismatch."""
        values = {e: at_q_one(c) for e, c in self.full_terms().items()}
        return {e: v for e, v in values.items() if v}

    def first_term(self) -> tuple[ExpVector, QCoeff] | None:
        if not self.terms:
            return None
        o = min(self.terms, key=lambda v: (degree(v), v))
        return add_vectors(self.shift, o), self.terms[o]

    def __str__(self) -> str:
        if not self.terms:
            return f"0 + O({self.trunc + 1})"
        parts = []
        for o in sorted(self.terms, key=lambda v: (degree(v), v)):
            e = add_vectors(self.shift, o)
            parts.append(f"({format_coeff(self.terms[o])})*Y^{e}")
        return " + ".join(parts) + f" + O({self.trunc + 1})"


def series_at(coeffs: list[QCoeff], x: QLaurentElement, ell: int) -> QLaurentElement:
    """Σ_j coeffs[j] x^j up to degree ell for x of positive support."""
    if not x.is_positive():
        raise NonPositiveArgument(f"{x} has a term outside the positive cone")
    ctx = x.ctx
    total = ctx.one(ell).scale(coeffs[0])
    power = ctx.one(ell)
    for c in coeffs[1:]:
        power = (power * x).cut(ell)
        if power.is_zero():
            break
        if c:
            total = total + power.scale(c)
    return total


def e_q_coefficients(base: QCoeff, jmax: int) -> list[QCoeff]:
    """1/(base; base)_j for j = 0..jmax."""
    return [1 / q_pochhammer(base, j) for j in range(jmax + 1)]


def e_q_series(arg: QLaurentElement, ell: int | None = None, base: QCoeff | None = None) -> QLaurentElement:
    """e_q(x) = Σ x^n / (q; q)_n, with q = `base` when given."""
    ell = setting("quantum", "degree", 8) if ell is None else ell
    base = arg.ctx.q() if base is None else base
    return series_at(e_q_coefficients(base, ell), arg, ell)


def psi_q_coefficients(root: QCoeff, jmax: int) -> list[QCoeff]:
    """Coefficients of Ψ_q(x) = e_{q²}(-q x)."""
    base = root**2
    return [(-root) ** j / q_pochhammer(base, j) for j in range(jmax + 1)]


def psi_q_series(arg: QLaurentElement, ell: int | None = None, root: QCoeff | None = None) -> QLaurentElement:
    """Ψ_q(x) = Π_k (1 + q^{2k-1} x)⁻¹, q = `root` when given."""
    ell = setting("quantum", "degree", 8) if ell is None else ell
    root = arg.ctx.q() if root is None else root
    return series_at(psi_q_coefficients(root, ell), arg, ell)


def psi_q_inverse_coefficients(root: QCoeff, jmax: int) -> list[QCoeff]:
    """Coefficients q^{j²} / (q²; q²)_j of Ψ_q(x)⁻¹ = Π_k (1 + q^{2k-1} x)."""
    base = root**2
    return [root ** (j * j) / q_pochhammer(base, j) for j in range(jmax + 1)]


def psi_q_power(arg: QLaurentElement, power: int, ell: int | None = None, root: QCoeff | None = None) -> QLaurentElement:
    """Ψ_q(x)^{±1}."""
    if power not in (1, -1):
        raise ValueError(f"power must be ±1, got {power}")
    ell = setting("quantum", "degree", 8) if ell is None else ell
    root = arg.ctx.q() if root is None else root
    coeffs = psi_q_coefficients(root, ell) if power > 0 else psi_q_inverse_coefficients(root, ell)
    return series_at(coeffs, arg, ell)
