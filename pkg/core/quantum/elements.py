"""
ClusterDilog — Quantum Dilogarithm Elements

Ψ_{a,b}[n] = exp(Σ_j (-1)^{j+1} q^{jb} / (j [ja]_q) · X_{jn}) acting on the
quantum torus by

    Ψ_{a,b}[n](Y^m) = Y^m exp(Σ_j (q^{2jα} - 1)/(q^{2ja} - 1) · (-1)^{j+1}/j · q^{ja+jb} Y^{jn}),

α = {n, m}_Ω. With a = 1 and b = 0 this is the adjoint action of Ψ_q(Y^n).
Products act right factor first, and two products are compared through their
images of Y_1..Y_n, which is faithful for nonsingular Ω.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from core.algebra.polynomial import ExpVector, add_vectors, degree, scale_vector
from core.errors import IdentityFails
from core.quantum.algebra import QContext, QLaurentElement
from core.quantum.qnumbers import QCoeff, QField, at_q_one, q_number
from core.scatter.factorize import DilogFactor

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QDilogFactor:
    """Ψ_{a,b}[n]^{power}."""

    n: ExpVector
    a: Fraction = Fraction(1)
    b: Fraction = Fraction(0)
    power: int = 1

    def __post_init__(self) -> None:
        if min(self.n) < 0 or not any(self.n):
            raise ValueError(f"quantum dilogarithm element needs a positive vector, got {self.n}")
        if Fraction(self.a) <= 0:
            raise ValueError(f"interval a must be positive, got {self.a}")
        if self.power not in (1, -1):
            raise ValueError(f"power must be ±1, got {self.power}")
        object.__setattr__(self, "n", tuple(int(x) for x in self.n))
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def inverse(self) -> "QDilogFactor":
        return QDilogFactor(self.n, self.a, self.b, -self.power)

    def exponents(self) -> tuple[Fraction, ...]:
        """Powers of q that the action needs besides those of Ω."""
        return 2 * self.a, self.a + self.b

    def classical(self) -> DilogFactor:
        """The q = 1 limit Ψ[n]^{power/a}."""
        return DilogFactor(self.n, Fraction(self.power) / self.a)

    def __str__(self) -> str:
        text = "[" + ",".join(str(x) for x in self.n) + "]"
        if self.b:
            text += f"_{{{self.a},{self.b}}}"
        elif self.a != 1:
            text += f"_{{{self.a}}}"
        return text if self.power == 1 else text + "^-1"


def format_qproduct(factors) -> str:
    return "".join(str(f) for f in factors) or "id"


def context_for(omega, factors, d: int | None = None) -> QContext:
    """Smallest context holding every coefficient the factors need."""
    return QContext.of(omega, *(x for f in factors for x in f.exponents()), d=d)


def log_coefficients(f: QDilogFactor, jmax: int) -> list[QCoeff]:
    """power · (-1)^{j+1} q^{jb} / (j [ja]_q) for j = 1..jmax, over q^{1/d} with d from a and b."""
    ctx = QContext.of([[0]], *f.exponents(), f.a, f.b)
    result = []
    for j in range(1, jmax + 1):
        sign = f.power * (1 if j % 2 else -1)
        result.append(ctx.q(j * f.b) * sign / (j * q_number(j * f.a, ctx.d)))
    return result


@lru_cache(maxsize=4096)
def _exp_coefficients(ctx: QContext, a: Fraction, b: Fraction, power: int, alpha: Fraction, jmax: int) -> tuple:
    """e_0..e_jmax of exp(power · Σ_j w_j z^j)."""
    w = [QField.zero]
    for j in range(1, jmax + 1):
        sign = power if j % 2 else -power
        ratio = (ctx.q(2 * j * alpha) - 1) / (ctx.q(2 * j * a) - 1)
        w.append(ratio * ctx.q(j * (a + b)) * sign / j)
    e = [QField.one]
    for m in range(1, jmax + 1):
        e.append(sum((j * w[j] * e[m - j] for j in range(1, m + 1)), QField.zero) / m)
    return tuple(e)


def qpsi_action(f: QDilogFactor, eps_power: int, target: QLaurentElement) -> QLaurentElement:
    """Ψ_{a,b}[n]^{eps_power · power} applied to a truncated element, monomial by monomial."""
    ctx = target.ctx
    power = f.power * eps_power
    step = degree(f.n)
    jmax = target.trunc // step
    out: dict[ExpVector, QCoeff] = {}
    for o, c in target.terms.items():
        m = add_vectors(target.shift, o)
        alpha = ctx.bracket(f.n, m)
        room = (target.trunc - degree(o)) // step
        if not alpha or not room:
            out[o] = out.get(o, QField.zero) + c
            continue
        e = _exp_coefficients(ctx, f.a, f.b, power, alpha, jmax)
        for j in range(room + 1):
            if e[j]:
                # Y^m · Y^{jn} = q^{-jα} Y^{m+jn}
                key = add_vectors(o, scale_vector(j, f.n))
                out[key] = out.get(key, QField.zero) + c * e[j] * ctx.q(-j * alpha)
    terms = {k: v for k, v in out.items() if v}
    return QLaurentElement(ctx, target.shift, terms, target.trunc).normalized()


def q_element_action(factors, target: QLaurentElement) -> QLaurentElement:
    """(f_1 ⋯ f_r)(target), applying f_r first."""
    for f in reversed(factors):
        target = qpsi_action(f, 1, target)
    return target


def compare_actions(lhs, rhs, ctx: QContext, ell: int, name: str = "identity") -> None:
    """Raise IdentityFails at the first generator whose images under the two products differ."""
    for i in range(1, ctx.rank + 1):
        y = ctx.generator(i, ell)
        left, right = q_element_action(lhs, y), q_element_action(rhs, y)
        diff = left - right
        if not diff.is_zero():
            e, c = diff.first_term()
            raise IdentityFails(f"{name}: images of Y{i} differ at Y^{e} by {c.as_expr()}")
    logger.debug("%s holds on generators to degree %d", name, ell)


def log_coefficient_limits(f: QDilogFactor, jmax: int) -> list[Fraction]:
    return [at_q_one(c) for c in log_coefficients(f, jmax)]
