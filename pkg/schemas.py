from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, conint, conlist, constr

RATIONAL_PATTERN = r"^[+-]?\d+(/\d+)?$"

Rational = constr(strip_whitespace=True, pattern=RATIONAL_PATTERN)
Index = conint(ge=1)


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ErrorResponse(BaseModel):
    detail: str = Field(description="Human-readable error message")
    code: Optional[str] = Field(default=None, description="Optional machine-readable error code")


# ---------------------------------------------------------------------------
# Input file formats
# ---------------------------------------------------------------------------

class BracketTerm(StrictModel):
    k: Index = Field(description="1-based index of the basis vector e_k")
    c: Rational = Field(description="Coefficient as 'p' or 'p/q'")


class BracketEntry(StrictModel):
    """``[e_i, e_j] = Σ c e_k`` for ``i < j``."""
    i: Index
    j: Index
    terms: List[BracketTerm] = Field(default_factory=list)


class AlgebraFile(StrictModel):
    name: Optional[str] = None
    dim: conint(ge=1, le=64)
    brackets: List[BracketEntry] = Field(default_factory=list)
    metric: Optional[List[List[Rational]]] = Field(
        default=None, description="Symmetric positive-definite Gram matrix (default identity)",
    )


class MetricFile(StrictModel):
    metric: List[List[Rational]]


class FormEntry(StrictModel):
    i: Index
    j: Index
    c: Rational


class FormFile(StrictModel):
    dim: conint(ge=1, le=64)
    entries: List[FormEntry] = Field(default_factory=list)


class GraphFile(StrictModel):
    vertices: conint(ge=1, le=64)
    edges: List[conlist(Index, min_length=2, max_length=2)]


# ---------------------------------------------------------------------------
# Results
# ---------------------------------------------------------------------------

class CertificateModel(StrictModel):
    kind: Literal["OddDimension", "CommonRadical", "ZeroPfaffian", "NonSingularObstruction"]
    vector: Optional[List[Rational]] = None
    label: Optional[str] = Field(default=None, description="Radical vector in e_k notation")


class VerdictModel(StrictModel):
    answer: Literal["yes", "no", "unknown"]
    witness: Optional[FormFile] = None
    witness_label: Optional[str] = None
    certificate: Optional[CertificateModel] = None
    method: List[str] = Field(default_factory=list)


class ValidationSection(StrictModel):
    valid: bool
    detail: Optional[str] = None


class DecompositionSection(StrictModel):
    metric: str = Field(description="'identity', 'custom' or 'random:SEED'")
    center_dim: int
    v_dim: int
    commutator_dim: int
    kerj_dim: int
    center_basis: List[List[Rational]]
    v_basis: List[List[Rational]]
    commutator_basis: List[List[Rational]]
    kerj_basis: List[List[Rational]]


class SingularitySection(StrictModel):
    kind: Literal["NonSingular", "AlmostNonSingular", "Singular"]
    certainty: Literal["Proven", "Heuristic"]
    method: str
    h_type: bool


class FormsSection(StrictModel):
    closed_dim: int
    exact_dim: int
    typeI_dim: int
    typeII_dim: int
    betti1: int
    betti2: int
    typeII_unknowns: int
    typeII_rank: int


class MainTheoremSection(StrictModel):
    typeII_dim: int
    equivalence_holds: bool
    exception: bool
    consistent_with_main_theorem: bool
    note: str


class AnalysisReport(StrictModel):
    name: Optional[str] = None
    dim: int
    validation: ValidationSection
    decomposition: Optional[DecompositionSection] = None
    singularity: Optional[SingularitySection] = None
    forms: Optional[FormsSection] = None
    symplectic: Optional[VerdictModel] = None
    main_theorem: Optional[MainTheoremSection] = None
    errors: List[str] = Field(default_factory=list)


class FormBasisReport(StrictModel):
    kind: Literal["Closed", "Exact", "ClosedTypeI", "ClosedTypeII"]
    dim: int
    metric: Optional[str] = None
    forms: List[FormFile] = Field(default_factory=list)
    labels: List[str] = Field(default_factory=list)


class GraphReport(StrictModel):
    vertices: int
    edges: List[List[int]]
    pt_criterion: bool
    typeII_unknowns: int
    typeII_equations: int
    typeII_rank: int
    analysis: AnalysisReport


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------

class ExpectedModel(StrictModel):
    center_dim: int
    commutator_dim: int
    kerj_dim: int
    singularity: str
    h_type: bool
    closed_dim: int
    typeI_dim: int
    typeII_dim: int
    exact_dim: int
    symplectic: Literal["yes", "no", "unknown"]
    witness: Optional[FormFile] = None


class CatalogEntryModel(StrictModel):
    name: str
    description: str
    algebra: AlgebraFile
    expected: ExpectedModel
    aux_forms: Dict[str, FormFile] = Field(default_factory=dict)


class FieldCheckModel(StrictModel):
    field: str
    expected: Optional[object] = None
    actual: Optional[object] = None
    passed: bool


class EntryResultModel(StrictModel):
    name: str
    passed: bool
    checks: List[FieldCheckModel] = Field(default_factory=list)
    error: Optional[str] = None


class VerificationReportModel(StrictModel):
    passed: bool
    failures: int
    entries: List[EntryResultModel] = Field(default_factory=list)
