"""
ClusterDilog — Factored Subtraction-Free Values

A FactoredSF is a Laurent monomial times a product of integer powers of
"atoms": polynomials with constant term 1 and at least two terms, kept in a
process-wide intern table so equal polynomials share one atom id. The
separation formulas produce exactly this shape, which makes products,
tropicalization, positive evaluation and wedge bookkeeping exact.
"""

import logging
import math
import sys
import threading
from dataclasses import dataclass, field

import numpy as np
from sympy.polys.domains import QQ

from core.algebra.polynomial import (
    ExpVector,
    MultiPoly,
    canonical_key,
    constant_term,
    exact_div,
    format_poly,
    monomial,
    one,
    poly_from_json,
    poly_to_json,
    tropical_min,
)
from core.algebra.series import mul_trunc, pow_trunc
from core.errors import NonFactorizable, Overflow

logger = logging.getLogger(__name__)

LOG_MIN_NORMAL = math.log(sys.float_info.min)


class AtomTable:
    """Append-only intern table of canonical atoms, guarded by a lock."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._polys: list[MultiPoly] = []
        self._index: dict[tuple, int] = {}
        self._irreducible: dict[int, tuple[tuple[int, int], ...]] = {}
        self._arrays: dict[int, tuple[np.ndarray, np.ndarray]] = {}

    def __len__(self) -> int:
        return len(self._polys)

    def intern(self, p: MultiPoly) -> int:
        """Return the id of p, adding it on first sight."""
        if constant_term(p) != 1 or len(p) < 2:
            raise NonFactorizable(f"atoms need constant term 1 and two terms: {format_poly(p)}")
        key = canonical_key(p)
        with self._lock:
            atom_id = self._index.get(key)
            if atom_id is None:
                atom_id = len(self._polys)
                self._polys.append(p)
                self._index[key] = atom_id
                logger.debug("Interned atom %d: %s", atom_id, format_poly(p))
            return atom_id

    def poly(self, atom_id: int) -> MultiPoly:
        return self._polys[atom_id]

    def irreducible_factors(self, atom_id: int) -> tuple[tuple[int, int], ...]:
        """Split an atom into irreducible atoms (cached)."""
        cached = self._irreducible.get(atom_id)
        if cached is not None:
            return cached
        p = self._polys[atom_id]
        content, parts = p.factor_list()
        scale = QQ.convert(content)
        pieces: dict[int, int] = {}
        for f, e in parts:
            c0 = constant_term(f)
            if not c0:
                raise NonFactorizable(f"factor {format_poly(f)} of an atom has no constant term")
            scale *= c0**e
            g = f * f.ring(1 / c0)
            if len(g) < 2:
                continue
            g_id = self.intern(g)
            pieces[g_id] = pieces.get(g_id, 0) + e
        if scale != 1:
            raise NonFactorizable(f"factorization of atom {atom_id} lost a scalar {scale}")
        result = tuple(sorted(pieces.items()))
        with self._lock:
            self._irreducible[atom_id] = result
        return result

    def log_value(self, atom_id: int, log_point: np.ndarray) -> float:
        """log of the atom at exp(log_point), computed by vectorised term sums."""
        arrays = self._arrays.get(atom_id)
        if arrays is None:
            p = self._polys[atom_id]
            exps = np.array([m for m in p.keys()], dtype=float)
            coeffs = np.array([float(c) for c in p.values()], dtype=float)
            arrays = (exps, coeffs)
            with self._lock:
                self._arrays[atom_id] = arrays
        exps, coeffs = arrays
        logs = exps @ log_point
        top = logs.max()
        value = coeffs @ np.exp(logs - top)
        if not np.isfinite(value) or value <= 0:
            raise Overflow(f"atom {atom_id} evaluation left the double range")
        return float(top + math.log(value))


ATOMS = AtomTable()


def _merge(a: dict[int, int], b, sign: int = 1) -> dict[int, int]:
    out = dict(a)
    for atom_id, e in b:
        out[atom_id] = out.get(atom_id, 0) + sign * e
        if out[atom_id] == 0:
            del out[atom_id]
    return out


@dataclass(frozen=True)
class FactoredSF:
    """y^monomial * prod atom^exponent, atoms referenced by intern id."""

    monomial: ExpVector
    factors: tuple[tuple[int, int], ...] = field(default=())

    @property
    def rank(self) -> int:
        return len(self.monomial)

    @classmethod
    def unit(cls, n: int) -> "FactoredSF":
        return cls((0,) * n)

    @classmethod
    def from_monomial(cls, exps) -> "FactoredSF":
        return cls(tuple(int(e) for e in exps))

    @classmethod
    def from_atoms(cls, exps, atoms: dict[int, int]) -> "FactoredSF":
        return cls(tuple(int(e) for e in exps), tuple(sorted((a, e) for a, e in atoms.items() if e)))

    @classmethod
    def from_poly(cls, p: MultiPoly, exponent: int = 1) -> "FactoredSF":
        """
        Factor a subtraction-free polynomial as monomial content times one atom.
        The cofactor must have constant term 1.
        """
        content = tropical_min(p)
        cofactor = exact_div(p, monomial(content))
        mono = tuple(exponent * c for c in content)
        if len(cofactor) == 1:
            if constant_term(cofactor) != 1:
                raise NonFactorizable(f"{format_poly(p)} carries a scalar coefficient")
            return cls(mono)
        atom_id = ATOMS.intern(cofactor)
        return cls(mono, ((atom_id, exponent),))

    def __mul__(self, other: "FactoredSF") -> "FactoredSF":
        mono = tuple(a + b for a, b in zip(self.monomial, other.monomial))
        return FactoredSF(mono, tuple(sorted(_merge(dict(self.factors), other.factors).items())))

    def __truediv__(self, other: "FactoredSF") -> "FactoredSF":
        return self * other.inverse()

    def __pow__(self, k: int) -> "FactoredSF":
        return FactoredSF(
            tuple(k * a for a in self.monomial),
            tuple((atom_id, k * e) for atom_id, e in self.factors) if k else (),
        )

    def inverse(self) -> "FactoredSF":
        return self**-1

    def is_monomial(self) -> bool:
        return not self.factors

    def tropicalize(self) -> ExpVector:
        """Every atom has constant term 1, so only the monomial survives."""
        return self.monomial

    def eval_positive(self, point) -> float:
        """Value at a strictly positive real point, accumulated in log space."""
        log_point = np.log(np.asarray(point, dtype=float))
        total = float(np.dot(np.asarray(self.monomial, dtype=float), log_point))
        for atom_id, e in self.factors:
            total += e * ATOMS.log_value(atom_id, log_point)
        if total < LOG_MIN_NORMAL:
            raise Overflow(f"value exp({total:.1f}) underflows the double range")
        try:
            return math.exp(total)
        except OverflowError as exc:
            raise Overflow(f"value exp({total:.1f}) exceeds the double range") from exc

    def refine(self) -> "FactoredSF":
        """Rewrite every atom as a product of irreducible atoms."""
        atoms: dict[int, int] = {}
        for atom_id, e in self.factors:
            for piece, k in ATOMS.irreducible_factors(atom_id):
                atoms[piece] = atoms.get(piece, 0) + e * k
        return FactoredSF.from_atoms(self.monomial, atoms)

    def numerator_denominator(self) -> tuple[MultiPoly, MultiPoly]:
        """Polynomials N, D with self = N / D."""
        num = monomial(tuple(max(e, 0) for e in self.monomial))
        den = monomial(tuple(max(-e, 0) for e in self.monomial))
        for atom_id, e in self.factors:
            if e > 0:
                num = num * ATOMS.poly(atom_id) ** e
            else:
                den = den * ATOMS.poly(atom_id) ** (-e)
        return num, den

    def one_plus(self) -> "FactoredSF":
        """1 + self as a factored value, refined into irreducible atoms."""
        num, den = self.numerator_denominator()
        total = FactoredSF.from_poly(num + den).refine()
        den_sf = FactoredSF.from_atoms(
            tuple(max(-e, 0) for e in self.monomial),
            {atom_id: -e for atom_id, e in self.factors if e < 0},
        )
        return total / den_sf.refine()

    def expand_series(self, ell: int) -> tuple[ExpVector, MultiPoly]:
        """Monomial and the atom product as a power series truncated at degree ell."""
        series = one(self.rank)
        for atom_id, e in self.factors:
            series = mul_trunc(series, pow_trunc(ATOMS.poly(atom_id), e, ell), ell)
        return self.monomial, series

    def to_json(self) -> dict:
        return {
            "monomial": list(self.monomial),
            "factors": [[poly_to_json(ATOMS.poly(a)), e] for a, e in self.factors],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FactoredSF":
        mono = tuple(int(e) for e in data["monomial"])
        value = cls(mono)
        for poly_data, e in data.get("factors", []):
            value = value * FactoredSF.from_poly(poly_from_json(poly_data, len(mono)), int(e))
        return value

    def __str__(self) -> str:
        parts = []
        mono = "*".join(
            f"y{i + 1}^{e}" if e != 1 else f"y{i + 1}" for i, e in enumerate(self.monomial) if e
        )
        if mono:
            parts.append(mono)
        for atom_id, e in self.factors:
            base = f"({format_poly(ATOMS.poly(atom_id))})"
            parts.append(base if e == 1 else f"{base}^{e}")
        return "*".join(parts) or "1"
