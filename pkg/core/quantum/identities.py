"""
ClusterDilog — Quantum Dilogarithm Identities

Checks of the q-exponential and quantum dilogarithm identities as truncated
equalities: the q-binomial theorem and e_q relations in ab = qba, the
pentagon relation of Ψ_q and of the elements Ψ_{a,b}[n], fission-fusion,
the quantum dilogarithm identities of a period in tropical and universal
form, the two rank-2 affine wall identities and the q → 1 limits.

Every check returns a QuantumCheckReport on success and raises IdentityFails
or LimitMismatch at the first disagreeing coefficient.
"""

import logging
from fractions import Fraction

from core.algebra.polynomial import ExpVector, degree, to_fraction, unit_vector
from core.errors import IdentityFails, LimitMismatch
from core.pattern.engine import PatternRun
from core.pattern.periodicity import detect_period
from core.pattern.separation import separation_y
from core.quantum.algebra import QContext, QLaurentElement, e_q_series, psi_q_power, psi_q_series
from core.quantum.elements import (
    QDilogFactor,
    compare_actions,
    context_for,
    format_qproduct,
    log_coefficient_limits,
    q_element_action,
)
from core.quantum.mutation import QuantumRun, quantum_run, quantum_synchronicity
from core.quantum.qnumbers import q_binomial
from core.scatter.diagram import RANK2_OMEGA
from core.scatter.factorize import group_log_factorize, product_of_factors
from core.settings import setting
from models.cdl_models import QuantumCheckReport

logger = logging.getLogger(__name__)

# a = Y1, b = Y2 with ab = q ba
TWO_GENERATOR_OMEGA = [[0, Fraction(1, 2)], [Fraction(-1, 2), 0]]

QCSD_CASES = ("a1affine", "a2twisted")


def _degree(ell: int | None) -> int:
    return setting("quantum", "degree", 8) if ell is None else ell


def require_equal(lhs: QLaurentElement, rhs, name: str) -> None:
    diff = lhs - rhs
    if not diff.is_zero():
        e, c = diff.first_term()
        raise IdentityFails(f"{name}: sides differ at Y^{e} by {c.as_expr()}")


def _report(name: str, ell: int, detail: str = "") -> QuantumCheckReport:
    logger.info("%s holds to degree %d", name, ell)
    return QuantumCheckReport(name=name, degree=ell, passed=True, detail=detail)


# -- q-series in two generators ---------------------------------------------------------------


def two_generator_context() -> QContext:
    return QContext.of(TWO_GENERATOR_OMEGA)


def verify_psi_difference(ell: int | None = None) -> QuantumCheckReport:
    """Ψ_q(q²x) = (1 + qx) Ψ_q(x)."""
    ell = _degree(ell)
    ctx = QContext.of(RANK2_OMEGA)
    x = ctx.generator(1, ell)
    q = ctx.q()
    require_equal(psi_q_series(x.scale(q**2), ell), (1 + x.scale(q)) * psi_q_series(x, ell), "Ψ_q difference relation")
    return _report("psi-difference", ell)


def verify_q_binomial(nmax: int = 8) -> QuantumCheckReport:
    """(a + b)^n = Σ_k [n k]_q b^k a^{n-k} for n ≤ nmax."""
    ctx = two_generator_context()
    for n in range(nmax + 1):
        a, b = ctx.generator(1, n), ctx.generator(2, n)
        rhs = ctx.zero(n)
        for k in range(n + 1):
            rhs = rhs + (b**k * a ** (n - k)).scale(q_binomial(n, k, ctx.d))
        require_equal((a + b) ** n, rhs, f"q-binomial theorem at n = {n}")
    return _report("q-binomial", nmax)


def verify_e_q_identities(ell: int | None = None) -> QuantumCheckReport:
    """e_q(b)e_q(a) = e_q(a+b), e_q(a)e_q(b) = e_q(b-ba)e_q(a) = e_q(b)e_q(-ba)e_q(a) = e_q(b-ba+a)."""
    ell = _degree(ell)
    ctx = two_generator_context()
    a, b = ctx.generator(1, ell), ctx.generator(2, ell)
    ba = b * a
    ea, eb = e_q_series(a, ell), e_q_series(b, ell)
    require_equal(eb * ea, e_q_series(a + b, ell), "e_q(b)e_q(a) = e_q(a+b)")
    lhs = ea * eb
    require_equal(lhs, e_q_series(b - ba, ell) * ea, "e_q(a)e_q(b) = e_q(b-ba)e_q(a)")
    require_equal(lhs, eb * e_q_series(-ba, ell) * ea, "e_q pentagon")
    require_equal(lhs, e_q_series(b - ba + a, ell), "e_q(a)e_q(b) = e_q(b-ba+a)")
    return _report("e_q identities", ell)


def verify_psi_pentagon(ell: int | None = None) -> QuantumCheckReport:
    """Ψ_q(u)Ψ_q(v) = Ψ_q(v)Ψ_q(qvu)Ψ_q(u) with u = Y2, v = Y1, so uv = q²vu."""
    ell = _degree(ell)
    ctx = QContext.of(RANK2_OMEGA)
    u, v = ctx.generator(2, ell), ctx.generator(1, ell)
    quv = (v * u).scale(ctx.q())
    require_equal(
        psi_q_series(u, ell) * psi_q_series(v, ell),
        psi_q_series(v, ell) * psi_q_series(quv, ell) * psi_q_series(u, ell),
        "Ψ_q pentagon",
    )
    return _report("psi-pentagon", ell)


# -- elements ---------------------------------------------------------------------------------


def verify_element_pentagon(c=1, b1=0, b2=0, ell: int | None = None) -> QuantumCheckReport:
    """Ψ_{c,b2}[n2]Ψ_{c,b1}[n1] = Ψ_{c,b1}[n1]Ψ_{c,b1+b2}[n1+n2]Ψ_{c,b2}[n2] with {n2, n1} = c."""
    ell = _degree(ell)
    c, b1, b2 = Fraction(c), Fraction(b1), Fraction(b2)
    n1, n2 = (1, 0), (0, 1)
    lhs = [QDilogFactor(n2, c, b2), QDilogFactor(n1, c, b1)]
    rhs = [QDilogFactor(n1, c, b1), QDilogFactor((1, 1), c, b1 + b2), QDilogFactor(n2, c, b2)]
    omega = [[c * x for x in row] for row in RANK2_OMEGA]
    compare_actions(lhs, rhs, context_for(omega, lhs + rhs), ell, "element pentagon")
    return _report("element-pentagon", ell, f"c={c}, b1={b1}, b2={b2}")


def fission(f: QDilogFactor, p: int) -> list[QDilogFactor]:
    """Ψ_{a,b}[n] = Π_{t=1..p} Ψ_{pa, b+(2t-p-1)a}[n]."""
    if p < 1:
        raise ValueError(f"fission needs p ≥ 1, got {p}")
    return [QDilogFactor(f.n, p * f.a, f.b + (2 * t - p - 1) * f.a, f.power) for t in range(1, p + 1)]


def verify_fission_fusion(a=1, b=0, p: int = 2, n: ExpVector = (1, 1), ell: int | None = None) -> QuantumCheckReport:
    ell = _degree(ell)
    f = QDilogFactor(n, Fraction(a), Fraction(b))
    pieces = fission(f, p)
    compare_actions([f], pieces, context_for(RANK2_OMEGA, [f, *pieces]), ell, "fission-fusion")
    return _report("fission-fusion", ell, f"{f} = {format_qproduct(pieces)}")


def verify_q_pentagon(ell: int | None = None, c=1, b1=0, b2=0) -> QuantumCheckReport:
    """All pentagon-type relations: q-series, e_q, elements and fission-fusion."""
    ell = _degree(ell)
    names = []
    for report in (
        verify_psi_difference(ell),
        verify_q_binomial(min(ell, 8)),
        verify_e_q_identities(ell),
        verify_psi_pentagon(ell),
        verify_element_pentagon(c, b1, b2, ell),
        verify_fission_fusion(ell=ell),
    ):
        names.append(report.name)
    return _report("q-pentagon", ell, ", ".join(names))


# -- QDI of a period --------------------------------------------------------------------------


def _require_period(run: PatternRun) -> None:
    if detect_period(run) is None:
        raise ValueError(f"word {run.word.dirs} is not a period")


def _psi(ctx: QContext, arg: QLaurentElement, weight: int, power: int, ell: int) -> QLaurentElement:
    """Ψ_{q_k}(arg)^{power} with q_k = q^{1/δ_k}."""
    return psi_q_power(arg, power, ell, ctx.q(Fraction(1, weight)))


def tropical_factor(ctx: QContext, run: PatternRun, s: int, ell: int) -> QLaurentElement:
    """Ψ_{q_{k_s}}(Y^{c⁺(s)})^{ε_s}."""
    return _psi(ctx, ctx.monomial(run.c_plus[s], ell), run.weight(s), run.signs[s], ell)


def tropical_qdi_product(run: PatternRun, ell: int, ctx: QContext | None = None) -> QLaurentElement:
    """Π_{s=P-1..0} Ψ_{q_{k_s}}(Y^{c⁺(s)})^{ε_s}, step 0 rightmost."""
    ctx = QContext.for_matrix(run.word.matrix) if ctx is None else ctx
    product = ctx.one(ell)
    for s in range(run.length):
        product = tropical_factor(ctx, run, s, ell) * product
    return product


def verify_qdi_tropical(run: PatternRun, ell: int | None = None) -> QuantumCheckReport:
    ell = _degree(ell)
    _require_period(run)
    require_equal(tropical_qdi_product(run, ell), 1, f"tropical QDI of {run.word.dirs}")
    return _report("qdi-tropical", ell, f"word {list(run.word.dirs)}")


def universal_factor(qrun: QuantumRun, s: int, ell: int) -> QLaurentElement:
    """Ψ_{q_{k_s}}(Ỹ_{k_s}(s)^{ε_s})^{ε_s}."""
    run = qrun.run
    eps = run.signs[s]
    y = qrun.y_tilde(s)
    arg = y if eps > 0 else y.inverse()
    return _psi(qrun.ctx, arg, run.weight(s), eps, ell)


def verify_qdi_universal(run: PatternRun, ell: int | None = None, shuffle: bool = True) -> QuantumCheckReport:
    """Π_{s=0..P-1} Ψ_{q_{k_s}}(Ỹ_{k_s}(s)^{ε_s})^{ε_s} = 1, each prefix matched with the reversed tropical prefix."""
    ell = _degree(ell)
    _require_period(run)
    qrun = quantum_run(run, ell)
    ctx = qrun.ctx
    universal = tropical = ctx.one(ell)
    for s in range(run.length):
        universal = universal * universal_factor(qrun, s, ell)
        if shuffle:
            tropical = tropical_factor(ctx, run, s, ell) * tropical
            require_equal(universal, tropical, f"shuffle formula at step {s}")
    require_equal(universal, 1, f"universal QDI of {run.word.dirs}")
    return _report("qdi-universal", ell, f"word {list(run.word.dirs)}")


def verify_quantum_synchronicity(run: PatternRun, ell: int | None = None) -> QuantumCheckReport:
    """Y_{ν(i)}(P) = Y_i for the period ν of the classical run."""
    ell = _degree(ell)
    nu = detect_period(run)
    if nu is None:
        raise ValueError(f"word {run.word.dirs} is not a period")
    quantum_synchronicity(quantum_run(run, ell), nu)
    return _report("quantum-synchronicity", ell, f"nu {list(nu)}")


# -- rank-2 affine wall identities ------------------------------------------------------------


def _a1affine_sides(ell: int) -> tuple[list[QDilogFactor], list[QDilogFactor]]:
    half = Fraction(1, 2)
    lhs = [QDilogFactor((0, 1), half), QDilogFactor((1, 0), half)]
    left = [QDilogFactor((p + 1, p), half) for p in range(ell) if 2 * p + 1 <= ell]
    central = []
    j = 0
    while 2 ** (j + 1) <= ell:
        n, h = (2**j, 2**j), Fraction(2**j, 2)
        central += [QDilogFactor(n, h, -h), QDilogFactor(n, h, h)]
        j += 1
    right = [QDilogFactor((p, p + 1), half) for p in reversed(range(ell)) if 2 * p + 1 <= ell]
    return lhs, left + central + right


def _a2twisted_sides(ell: int) -> tuple[list[QDilogFactor], list[QDilogFactor]]:
    quarter = Fraction(1, 4)
    lhs = [QDilogFactor((0, 1), quarter), QDilogFactor((1, 0), 1)]
    left = []
    for p in range(ell):
        left += [QDilogFactor(n, a) for n, a in (((2 * p + 1, 4 * p), 1), ((p + 1, 2 * p + 1), quarter))
                 if degree(n) <= ell]
    central = [QDilogFactor((1, 2), Fraction(1, 2))] if ell >= 3 else []
    j = 0
    while 3 * 2**j <= ell:
        n, h = (2**j, 2 ** (j + 1)), Fraction(2**j, 2)
        central += [QDilogFactor(n, h, -h), QDilogFactor(n, h, h)]
        j += 1
    right = [QDilogFactor((0, 1), quarter)]
    for p in range(1, ell):
        right += [QDilogFactor(n, a) for n, a in (((2 * p - 1, 4 * p), 1), ((p, 2 * p + 1), quarter))
                  if degree(n) <= ell]
    return lhs, left + central + right[::-1]


def qcsd_sides(case: str, ell: int) -> tuple[list[QDilogFactor], list[QDilogFactor]]:
    """Anti-ordered and ordered sides of a rank-2 affine wall identity, factors of degree ≤ ell."""
    if case == "a1affine":
        return _a1affine_sides(ell)
    if case == "a2twisted":
        return _a2twisted_sides(ell)
    raise ValueError(f"unknown case {case!r}; expected one of {', '.join(QCSD_CASES)}")


def qcsd_wall_identity(case: str, ell: int | None = None) -> QuantumCheckReport:
    ell = _degree(ell)
    lhs, rhs = qcsd_sides(case, ell)
    compare_actions(lhs, rhs, context_for(RANK2_OMEGA, lhs + rhs), ell, f"{case} wall identity")
    return _report(f"qcsd-{case}", ell, f"{format_qproduct(lhs)} = {format_qproduct(rhs)}")


# -- q -> 1 ------------------------------------------------------------------------------------


def _factor_limit(f: QDilogFactor, ell: int) -> QuantumCheckReport:
    """Log coefficients (-1)^{j+1} q^{jb}/(j [ja]_q) tend to (-1)^{j+1}/(j² a)."""
    for j, value in enumerate(log_coefficient_limits(f, ell), start=1):
        expected = Fraction(f.power * (1 if j % 2 else -1), j * j) / f.a
        if value != expected:
            raise LimitMismatch(f"{f}: log coefficient {j} tends to {value}, expected {expected}")
    return _report("limit-factor", ell, str(f))


def _run_limit(qrun: QuantumRun) -> QuantumCheckReport:
    """Every Y_i(s) at q = 1 agrees with the classical y_i(s) where both are known."""
    run, ell = qrun.run, qrun.trunc
    for s in range(run.length + 1):
        for i in range(1, run.rank + 1):
            quantum = qrun.y(s, i)
            values = quantum.specialize()
            mono, series = separation_y(run, s, i).expand_series(ell)
            classical = {tuple(x + m for x, m in zip(e, mono)): to_fraction(c) for e, c in series.items()}
            for e in set(values) | set(classical):
                offset = tuple(x - m for x, m in zip(e, mono))
                if not quantum.in_window(e) or min(offset) < 0 or degree(offset) > ell:
                    continue
                if values.get(e, Fraction(0)) != classical.get(e, Fraction(0)):
                    raise LimitMismatch(
                        f"Y{i}({s}) at q = 1 has {values.get(e, 0)} at y^{e}, classical value {classical.get(e, 0)}"
                    )
    return _report("limit-run", ell, f"word {list(run.word.dirs)}")


def _merged(factors) -> list[tuple[ExpVector, Fraction]]:
    out: list[tuple[ExpVector, Fraction]] = []
    for f in factors:
        if out and out[-1][0] == f.n:
            out[-1] = (f.n, out[-1][1] + f.exponent)
        else:
            out.append((f.n, f.exponent))
    return out


def _ordering_limit(lhs, rhs, ell: int) -> QuantumCheckReport:
    """
    The classical limits of both sides give the classical ordering of the limit
    of the anti-ordered side, and the q = 1 action of the quantum ordered side
    is the action of its classical limit.
    """
    classical_lhs = [f.classical() for f in lhs]
    classical_rhs = [f.classical() for f in rhs if degree(f.n) <= ell]
    g = product_of_factors(classical_lhs, RANK2_OMEGA, ell)
    expected = _merged(f for _, fs in group_log_factorize(g) for f in fs)
    got = _merged(classical_rhs)
    if got != expected:
        raise LimitMismatch(f"ordered side tends to {got}, classical ordering is {expected}")
    h = product_of_factors(classical_rhs, RANK2_OMEGA, ell)
    ctx = context_for(RANK2_OMEGA, list(lhs) + list(rhs))
    for i in range(1, 3):
        image = q_element_action(rhs, ctx.generator(i, ell)).specialize()
        unit = {tuple(x + m for x, m in zip(e, unit_vector(2, i - 1))): to_fraction(c)
                for e, c in h.images[i - 1].items()}
        for e in set(image) | set(unit):
            if degree(e) - 1 <= ell and image.get(e, Fraction(0)) != unit.get(e, Fraction(0)):
                raise LimitMismatch(f"image of Y{i} at q = 1 differs from the classical action at y^{e}")
    return _report("limit-ordering", ell, f"{format_qproduct(lhs)} = {format_qproduct(rhs)}")


def classical_limit_check(target, ell: int | None = None) -> QuantumCheckReport:
    """
    q → 1 comparison with the classical engine. `target` is a QDilogFactor
    (log coefficients), a QuantumRun (mutations against separation formulas)
    or a pair (anti-ordered, ordered) of factor lists in rank 2.
    """
    if isinstance(target, QDilogFactor):
        return _factor_limit(target, _degree(ell))
    if isinstance(target, QuantumRun):
        return _run_limit(target)
    if isinstance(target, tuple) and len(target) == 2:
        return _ordering_limit(*target, _degree(ell))
    raise TypeError(f"no classical limit for {type(target).__name__}")


def b2_ordering() -> tuple[list[QDilogFactor], list[QDilogFactor]]:
    """[0,1]_{1/2}[1,0]_1 = [1,0]_1[1,1]_{1/2}[1,2]_1[0,1]_{1/2}."""
    half = Fraction(1, 2)
    lhs = [QDilogFactor((0, 1), half), QDilogFactor((1, 0))]
    rhs = [QDilogFactor((1, 0)), QDilogFactor((1, 1), half), QDilogFactor((1, 2)), QDilogFactor((0, 1), half)]
    return lhs, rhs
