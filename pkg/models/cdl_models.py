"""
ClusterDilog — Report Models

Every structured result handed to the command line or written as JSON uses one
of these models. Exact rationals travel as "p/q" strings and multiples of
π²/6 carry both a display string and the float value.
"""

from fractions import Fraction
from math import pi

from pydantic import BaseModel, Field

SCHEMA = "cdl/1"


def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def format_pi2_multiple(value: Fraction | int) -> str:
    """Display k·π²/6 for a rational k."""
    return f"{format_rational(value)}·π²/6"


def pi2_multiple(value: Fraction | int) -> float:
    return float(Fraction(value)) * pi**2 / 6


class DIWeightsModel(BaseModel):
    """Weighted counts of positive and negative tropical signs along a word."""

    n_plus: int = Field(ge=0, description="Σ δ over steps with ε = +1")
    n_minus: int = Field(ge=0, description="Σ δ over steps with ε = -1")


class DualityReport(BaseModel):
    """Outcome of the C/G/B duality checks along a run."""

    rank: int
    steps_checked: int = Field(description="Number of seeds checked, including the initial one")
    passed: bool = True


class DIReport(BaseModel):
    """Numeric verification of a dilogarithm identity."""

    kind: str = Field(description="Identity form: DI1, DI2, DI3, ysystem or pentagon")
    n_plus: int = Field(default=0, ge=0)
    n_minus: int = Field(default=0, ge=0)
    constant: str = Field(description="Expected value as a multiple of π²/6")
    expected: float
    max_residual: float = Field(ge=0.0, description="Largest |sum - expected| over the samples")
    residuals: dict[str, float] = Field(
        default_factory=dict, description="Worst residual per identity form when several are checked"
    )
    rng_seed: int | None = Field(default=None, description="Seed of the sampling generator")
    samples: int = Field(ge=0)
    tolerance: float
    passed: bool


class WedgeReport(BaseModel):
    """Exact constancy condition Σ δ y ∧ (1 + y) = 0 over a period."""

    steps: int
    atoms: int = Field(description="Independent atoms appearing in the wedge sum")
    nonzero_terms: int = Field(ge=0, description="Surviving coefficients, zero when the check passes")
    passed: bool


class VtReport(BaseModel):
    """Step-by-step check of V_t' - V_t = δ_k y_k ∧ (1 + y_k)."""

    steps: int
    passed: bool


class TropicalRunReport(BaseModel):
    """Periodicity and DI data of a Y-system Y(X, X')."""

    type_x: str
    type_xp: str
    half_period: int
    full_period: int
    omega: list[int] = Field(description="One-line image of the half-period permutation on vertices")
    n_plus: int
    n_minus: int
    constant: str
    omega_used: bool = Field(default=False, description="True when the half period permutes vertices")
    factorization: bool = Field(
        default=True, description="Only vertical, then only horizontal c-vectors changed besides the mutated ones"
    )
    symbolic: bool = Field(default=False, description="True when F-polynomials were checked as well")
    passed: bool


class ConstantYSystemReport(BaseModel):
    """Positive solution of the level-ℓ constant Y-system and its dilogarithm sum."""

    dynkin: str
    level: int
    iterations: int
    residual: float
    total: float
    expected: float
    constant: str
    passed: bool


class WallModel(BaseModel):
    """One outgoing wall of a rank-2 scattering diagram."""

    normal: list[int] = Field(description="Primitive normal vector n0")
    ray: list[int] = Field(description="Direction of the wall support")
    element: str = Field(description="Wall element as a product of Ψ factors")
    factors: list[tuple[list[int], str]] = Field(
        default_factory=list,
        description="(direction, exponent) pairs of the Ψ factorization"
    )


class DiagramReport(BaseModel):
    """A rank-2 consistent scattering diagram truncated at a degree."""

    delta: list[int]
    degree: int
    walls: list[WallModel]
    consistent: bool


class LoopDIReport(BaseModel):
    """Formal dilogarithm identity along a loop around the origin."""

    delta: list[int]
    degree: int
    terms: int
    passed: bool


class QuantumCheckReport(BaseModel):
    """Outcome of a quantum identity or classical-limit check."""

    name: str
    degree: int
    passed: bool
    detail: str = ""


class CommandReport(BaseModel):
    """Envelope printed by every CLI command."""

    schema_: str = Field(default=SCHEMA, alias="schema", serialization_alias="schema")
    command: str
    passed: bool
    payload: dict = Field(default_factory=dict)
    errors: list[str] = Field(default_factory=list)

    model_config = {"populate_by_name": True}


SUBCOMMANDS = ("mutate", "verify-di", "ysystem", "csd", "qdi", "selftest", "coxeter", "constant-ysystem")


class Command(BaseModel):
    """One CLI invocation after flag parsing."""

    subcommand: str = Field(description=f"One of {', '.join(SUBCOMMANDS)}")
    options: dict = Field(default_factory=dict, description="Subcommand flags keyed by destination name")
    rng_seed: int = 0
    tolerance: float = Field(default=1e-9, gt=0.0)
    degree: int | None = Field(default=None, ge=0, description="Truncation degree, None for the configured default")
    samples: int | None = Field(default=None, ge=1)


class JobSummary(BaseModel):
    """One line of the selftest table."""

    name: str
    command: str
    passed: bool
    errors: list[str] = Field(default_factory=list)
