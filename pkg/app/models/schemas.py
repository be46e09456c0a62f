from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..core.config import settings

Conclusion = Literal["delta_ge_6", "delta_eq_8", "inapplicable"]
Command = Literal["check", "analyze", "stats", "bounds", "reproduce"]
StatsMode = Literal["cubic_s3", "quartic_klein"]


class FieldInfo(BaseModel):
    """Field model: degree and modulus as hex, most significant bit first"""
    n: int
    modulus: str


class ConditionResult(BaseModel):
    """One named theorem condition"""
    model_config = ConfigDict(populate_by_name=True)

    name: str
    passed: bool = Field(alias="pass")
    witness: Optional[str] = None


class ConditionReport(BaseModel):
    """Outcome of a theorem checker"""
    theorem: Literal["main", "a1a3zero"]
    field: FieldInfo
    conditions: List[ConditionResult]
    alpha: Optional[str] = None
    min_n: int
    conclusion: Conclusion

    @model_validator(mode="after")
    def _conclusion_matches_conditions(self):
        concluded = all(c.passed for c in self.conditions) and self.field.n >= self.min_n
        if concluded != (self.conclusion != "inapplicable"):
            raise ValueError(
                f"conclusion '{self.conclusion}' is inconsistent with the conditions at n={self.field.n}"
            )
        return self


class CorollaryReport(BaseModel):
    """Membership in the a_4 = a_5 = 0 family and the main-theorem report it implies"""
    in_family: bool
    conditions: List[ConditionResult]
    implied: ConditionReport


class ChebotarevParams(BaseModel):
    """Effective Chebotarev threshold for one (d_Ω, deg D_αf) pair"""
    n: int
    d_omega: int
    deg_d_poly: int
    g_bound: int
    v_lower_bound: str
    min_n: int


class TypeHistogram(BaseModel):
    """Factorization patterns of sampled specializations"""
    mode: StatsMode
    alpha: str
    seed: int
    samples: int
    excluded: int
    counts: Dict[str, int]
    frequencies: Dict[str, float]
    expected: Dict[str, float]
    tolerance: float
    within_tolerance: bool

    @model_validator(mode="after")
    def _counts_add_up(self):
        if sum(self.counts.values()) + self.excluded != self.samples:
            raise ValueError("pattern counts plus exclusions must equal the sample count")
        return self


class SpectrumRowReport(BaseModel):
    """One row of the difference distribution table"""
    alpha: str
    d_degree: int
    delta_alpha: int
    distinct_values: int
    split_betas: List[str]
    counts: Optional[Dict[str, int]] = None


class DeltaSummary(BaseModel):
    """Differential uniformity with a maximizing (alpha, beta); runtime_ms only when timing is requested"""
    delta: int
    alpha: str
    beta: str
    runtime_ms: Optional[float] = None


class AnalyzeReport(BaseModel):
    """Spectrum analysis of one polynomial"""
    field: FieldInfo
    poly: str
    rows: List[SpectrumRowReport] = []
    summary: Optional[DeltaSummary] = None
    spectrum_csv: Optional[str] = None


class ScenarioResult(BaseModel):
    name: str
    passed: bool
    expected: Dict[str, object]
    observed: Dict[str, object]
    mismatches: List[str] = []


class ReproduceReport(BaseModel):
    passed: bool
    scenarios: List[ScenarioResult]


class RunConfig(BaseModel):
    """A single toolkit invocation, shared by the CLI, the HTTP API and the WebSocket"""
    command: Command
    n: Optional[int] = None
    modulus: Optional[str] = None
    poly: Optional[str] = None
    poly_file: Optional[str] = None
    alpha: Optional[str] = None
    mode: Optional[StatsMode] = None
    samples: int = settings.DEFAULT_SAMPLES
    seed: int = settings.DEFAULT_SEED
    full: bool = False
    include_counts: bool = False
    timing: bool = False
    spectrum_csv: Optional[str] = None
    d_omega: Optional[int] = None
    deg_d: Optional[int] = None
    scenario: Optional[str] = None
    output: Optional[str] = None
    row_max_n: Optional[int] = None
    delta_max_n: Optional[int] = None
    sweep_cap: Optional[int] = None

    @model_validator(mode="after")
    def _command_arguments(self):
        if self.command in ("check", "analyze", "stats"):
            if self.n is None:
                raise ValueError(f"'{self.command}' needs the field degree n")
            if (self.poly is None) == (self.poly_file is None):
                raise ValueError(f"'{self.command}' needs exactly one of poly or poly_file")
        if self.command == "bounds" and (self.d_omega is None or self.deg_d is None):
            raise ValueError("'bounds' needs d_omega and deg_d")
        if self.samples < 0:
            raise ValueError("samples must be nonnegative")
        return self


class RunResult(BaseModel):
    """Exit code plus the serialized report (or error)"""
    command: str
    exit_code: int
    report: Optional[dict] = None
    error: Optional[str] = None
    message: Optional[str] = None
