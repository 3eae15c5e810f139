"""Validate config/cdl_config.yaml (or $CDL_CONFIG) and print the effective settings."""

import sys

from pydantic import BaseModel, Field, ValidationError

from core.settings import config_path, load_config


class DilogSettings(BaseModel):
    tolerance: float = Field(gt=0.0)
    samples: int = Field(ge=1)
    sample_low: float = Field(gt=0.0)
    sample_high: float = Field(gt=0.0)
    series_cutoff: float = Field(gt=0.0, lt=1.0)


class YSystemSettings(BaseModel):
    symbolic_term_budget: int = Field(ge=1)
    solver_max_iterations: int = Field(ge=1)
    solver_tolerance: float = Field(gt=0.0)
    damping: float = Field(gt=0.0, le=1.0)


class ScatterSettings(BaseModel):
    degree: int = Field(ge=1)
    loop_degree: int = Field(ge=1)
    gfan_steps: int = Field(ge=1)


class QuantumSettings(BaseModel):
    degree: int = Field(ge=0)


class CliSettings(BaseModel):
    rng_seed: int = 0
    schema_: str = Field(default="cdl/1", alias="schema")
    workers: int = Field(default=4, ge=1)


class ConfigFile(BaseModel):
    dilog: DilogSettings
    ysystem: YSystemSettings
    scatter: ScatterSettings
    quantum: QuantumSettings
    cli: CliSettings


def main() -> int:
    try:
        config = ConfigFile.model_validate(load_config())
    except ValidationError as exc:
        print(f"[FAIL] {config_path()}\n{exc}")
        return 1
    print(f"[OK] {config_path()}")
    for section, values in config.model_dump(by_alias=True).items():
        print(f"{section}:")
        for key, value in values.items():
            print(f"  - {key}: {value}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
