"""
Pydantic models for protocol parameters, run configuration and output rows
"""

import math
from pathlib import Path
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from config.settings import settings

Command = Literal[
    "purify-prep", "purify-meas", "fixed-point", "condition", "verify",
    "distill", "swap", "tables", "oracle-check",
]
OutputFormat = Literal["csv", "json"]


class SpamParams(BaseModel):
    """The noise triple (f, q, eps) governing every closed form"""

    model_config = ConfigDict(frozen=True)

    f: float = Field(..., ge=0.5, le=1.0, description="Preparation fidelity <0|rho|0>")
    q: float = Field(..., ge=0.0, lt=0.5, description="Measurement noise fraction")
    eps: float = Field(default=0.0, ge=0.0, le=1.0, description="CNOT depolarizing fraction")

    @classmethod
    def balanced(cls, error: float, eps: float = 0.0) -> "SpamParams":
        """Balanced SPAM errors, 1 - f = q = error"""
        return cls(f=1.0 - error, q=error, eps=eps)

    @property
    def bias(self) -> float:
        """2*alpha - 1 = (2f - 1)(1 - 2q)"""
        return (2.0 * self.f - 1.0) * (1.0 - 2.0 * self.q)

    @property
    def alpha(self) -> float:
        return self.f * (1.0 - self.q) + (1.0 - self.f) * self.q

    @property
    def gate_ratio(self) -> float:
        """D = 2(2f - 1)(1 - 2q)(1 - eps)/eps; infinite for a noiseless CNOT"""
        if self.eps == 0.0:
            return math.inf
        return 2.0 * self.bias * (1.0 - self.eps) / self.eps


class OutcomeDistribution(BaseModel):
    """Two-qubit outcome probabilities p(ij) of the verification experiment"""

    model_config = ConfigDict(frozen=True)

    p00: float = Field(..., ge=0.0, le=1.0)
    p01: float = Field(..., ge=0.0, le=1.0)
    p10: float = Field(..., ge=0.0, le=1.0)
    p11: float = Field(..., ge=0.0, le=1.0)

    @model_validator(mode="after")
    def check_normalized(self) -> "OutcomeDistribution":
        total = self.p00 + self.p01 + self.p10 + self.p11
        if abs(total - 1.0) > settings.PROBABILITY_SUM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, expected 1")
        return self

    @classmethod
    def from_counts(cls, n00: float, n01: float, n10: float, n11: float) -> "OutcomeDistribution":
        """Normalize a finite-sample histogram"""
        total = n00 + n01 + n10 + n11
        if total <= 0:
            raise ValueError("histogram is empty")
        return cls(p00=n00 / total, p01=n01 / total, p10=n10 / total, p11=n11 / total)

    def as_list(self) -> List[float]:
        return [self.p00, self.p01, self.p10, self.p11]


class RunConfig(BaseModel):
    """One CLI invocation after flags, config file and defaults are merged"""

    command: Command = Field(..., description="Command to run")
    f: List[float] = Field(default_factory=lambda: [0.95], description="Preparation fidelities")
    q: List[float] = Field(default_factory=lambda: [0.05], description="Measurement noise fractions")
    eps: List[float] = Field(default_factory=lambda: [0.0], description="CNOT noise fractions")
    depth: List[int] = Field(default_factory=lambda: [0, 1, 2, 3], description="Ancilla counts n or m")
    F0: List[float] = Field(default_factory=lambda: [0.7], description="Initial Werner fidelities")
    target: float = Field(default=settings.DEFAULT_TARGET_FIDELITY, gt=0.0, lt=1.0)
    probs: Optional[OutcomeDistribution] = Field(default=None, description="Outcome distribution to verify")
    output: Optional[Path] = Field(default=None, description="Output file, or directory for tables")
    format: OutputFormat = Field(default=settings.DEFAULT_FORMAT)
    seed: int = Field(default=0, ge=0, description="Solver multi-start seed")

    @field_validator("f", "q", "eps", "depth", "F0")
    @classmethod
    def non_empty(cls, value: list) -> list:
        if not value:
            raise ValueError("sweep range is empty")
        return value

    @field_validator("depth")
    @classmethod
    def non_negative_depth(cls, value: List[int]) -> List[int]:
        if any(n < 0 for n in value):
            raise ValueError("ancilla counts must be >= 0")
        return value

    @model_validator(mode="after")
    def verify_needs_probs(self) -> "RunConfig":
        if self.command == "verify" and self.probs is None:
            raise ValueError("verify requires --probs")
        return self

    def grid(self) -> List[SpamParams]:
        """Every (f, q, eps) combination in sweep order"""
        return [SpamParams(f=f, q=q, eps=eps) for f in self.f for q in self.q for eps in self.eps]


# Output rows. Field order is the column order of emitted files.

class CurveRow(BaseModel):
    f: float
    q: float
    eps: float
    n: int
    value: float
    success_prob: float


class FixedPointRow(BaseModel):
    f: float
    q: float
    eps: float
    D: float
    d: float
    f_inf: float
    q_inf: float


class ConditionRow(BaseModel):
    f: float
    q: float
    eps: float
    f_one: float
    purifiable: bool
    eps_c: float
    verdict: str


class VerifyRow(BaseModel):
    f: float
    q: float
    eps: float
    residual: float
    multi_minimum: bool
    purifiable: bool
    eps_c: float
    f_limit: float
    ancillas_for_target: Optional[int]


class DistillRow(BaseModel):
    f: float
    q: float
    eps: float
    n: int
    F0: float
    threshold: float
    undistillable: bool
    rounds: int
    first_success_prob: Optional[float]
    copies: Optional[float]


class SwapRow(BaseModel):
    f: float
    q: float
    eps: float
    m: int
    fidelity: float


class OracleCheckRow(BaseModel):
    check: str
    points: int
    max_deviation: float
    tolerance: float
    passed: bool


# Published-table reproductions. `*_display` columns round the way the tables print.

class MeasTableRow(BaseModel):
    error: float
    m: int
    noise: float
    noise_display: str
    success_prob: float
    success_display: str


class CriticalEpsRow(BaseModel):
    error: float
    eps_c: float
    eps_c_display: str
    series: float


class VerificationTableRow(BaseModel):
    case: int
    f: float
    q: float
    eps: float
    p01: float
    p10: float
    p11: float
    p_display: str
    f_fit: float
    q_fit: float
    eps_fit: float
    residual: float
    f_1: float
    f_2: float
    f_3: float
    f_inf: float
    fidelity_display: str


class CopiesTableRow(BaseModel):
    F0: float
    n: int
    threshold: float
    undistillable: bool
    rounds: int
    copies: Optional[float]
    copies_display: str
    first_success_prob: Optional[float]
    success_display: str
