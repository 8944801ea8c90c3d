"""Data models for hermops."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from hermops.scalar import DEFAULT_PRECISION, Scalar


class Mode(Enum):
    EXACT = "exact"
    FLOAT = "float"


class Verdict(Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_PROPORTIONAL = "not-proportional"
    OVERFLOW = "overflow"


class Family(Enum):
    UNIVARIATE_EQ7 = "univariate-eq7"
    HERMITE_EQ13 = "hermite-eq13"
    BIVARIATE_EQ51 = "bivariate-eq51"
    BIVARIATE_CONJUGATED_EQ56 = "bivariate-conjugated-eq56"
    BIVARIATE_REPAIRED = "bivariate-repaired"
    LADDER = "ladder"


class Variant(Enum):
    """Choice of b' substitution when checking the bivariate BCH theorem."""

    PRINTED_1_MINUS_E = "paper-1-minus-e"
    PRINTED_E_MINUS_1 = "paper-e-minus-1"
    COMPUTED_S = "computed-s"


class Convention(Enum):
    """Exponent pairing for u_{n,m}: which index drives the x power."""

    N_WITH_X = "n-x"
    M_WITH_X = "m-x"


class OutputFormat(Enum):
    JSON = "json"
    CSV = "csv"
    PRETTY = "pretty"


@dataclass
class VerificationReport:
    """Result of one identity check."""

    check_id: str
    params: dict[str, Any]
    mode: Mode
    residual: Scalar
    tolerance: Scalar
    verdict: Verdict
    notes: str = ""
    # false for reports that record a known discrepancy rather than gate a run
    required: bool = True

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PASS


@dataclass
class Config:
    precision: int = DEFAULT_PRECISION
    tolerance_small: str = "1e-10"  # N <= 12
    tolerance_medium: str = "1e-8"  # N <= 24
    tolerance_large: str = "1e-6"
    output_format: str = "json"
    convention: str = "n-x"
    lambda_samples: list[str] = field(
        default_factory=lambda: ["1,1/2,1", "2,1,3", "1,-1/3,2"]
    )

    @classmethod
    def default(cls) -> Config:
        """Built-in settings used when no config file exists."""
        return cls()


@dataclass
class SuiteConfig:
    """Parameter ranges for a full verification run."""

    max_nm: int = 6
    eq2_max_n: int = 32
    eq25_max_n: int = 32
    eq31_max_n: int = 6
    eq31_margin: int = 8
    eq31_stability_step: int = 4
    hermite_max_n: int = 64
    rodrigues_max_n: int = 20
    eigen_max_nm: int = 12
    ladder_weights: list[Scalar] = field(default_factory=lambda: [0, 1, 2, 5])
    ladder_max_dim: int = 16
    bch_degree: int = 10
    bivariate_bch_degree: int = 6
    conjugation_degree: int = 8
    prop1_degree: int = 10
    precision: int = DEFAULT_PRECISION
    lambda_samples: list[str] = field(
        default_factory=lambda: ["1,1/2,1", "2,1,3", "1,-1/3,2"]
    )
    tolerance_small: str = "1e-10"
    tolerance_medium: str = "1e-8"
    tolerance_large: str = "1e-6"
