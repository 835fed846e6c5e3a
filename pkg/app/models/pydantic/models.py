"""
Domain models for matfn.
Matrices themselves are plain numpy arrays; everything that travels with
them (tolerances, Jordan structures, verdicts, results, reports) is a
frozen pydantic model.
"""

from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_serializer, model_validator

from app.config.settings import settings

EPS = float(np.finfo(np.float64).eps)


class BlockKind(Enum):
    REAL = "real"
    COMPLEX_PAIR = "complex_pair"


class Branch(Enum):
    PRINCIPAL = "principal"
    CONSTRUCTED = "constructed"


class ResidualKind(Enum):
    LOG = "log"
    SQRT = "sqrt"
    ROOT = "root"


class Tolerances(BaseModel):
    """
    Numerical thresholds. A field left as None is derived from the matrix
    at hand: cluster_tol = n * ||A||_1 * sqrt(eps) and, for each matrix M
    whose rank is taken, RANK_TOL_SCALE * n * eps * ||M||_1. Powers of
    A - lam I are measured against A instead (power_rank_for).
    """
    model_config = ConfigDict(frozen=True)

    cluster_tol: Optional[float] = Field(None, ge=0, description="Eigenvalue identification radius.")
    rank_tol: Optional[float] = Field(None, ge=0, description="Singular-value zero threshold.")
    residual_tol: float = Field(default_factory=lambda: settings.RESIDUAL_TOL, ge=0,
                                description="Acceptance residual.")

    def cluster_for(self, A: np.ndarray) -> float:
        if self.cluster_tol is not None:
            return self.cluster_tol
        return A.shape[0] * float(np.linalg.norm(A, 1)) * np.sqrt(EPS)

    def rank_for(self, M: np.ndarray) -> float:
        if self.rank_tol is not None:
            return self.rank_tol
        return settings.RANK_TOL_SCALE * max(M.shape) * EPS * float(np.linalg.norm(M, 1))

    def power_rank_for(self, A: np.ndarray, lam: complex, k: int) -> float:
        """Zero threshold for (A - lam I)^k: RANK_TOL_SCALE * n * eps * max(||A||_1, |lam|)^k."""
        if self.rank_tol is not None:
            return self.rank_tol
        scale = max(float(np.linalg.norm(A, 1)), abs(lam))
        return settings.RANK_TOL_SCALE * A.shape[0] * EPS * scale ** k


class Eigenvalue(BaseModel):
    model_config = ConfigDict(frozen=True)

    real: float
    imag: float = 0.0
    algebraic_multiplicity: int = Field(1, ge=1)

    @property
    def value(self) -> complex:
        return complex(self.real, self.imag)


class JordanBlockSpec(BaseModel):
    """
    One Jordan block. For kind=COMPLEX_PAIR the block is the real 2r x 2r
    block with cells L(real, imag) = [[real, -imag], [imag, real]]; imag is
    positive, or zero for a pair of identical negative blocks.
    kind is None in complex Jordan structures.
    """
    model_config = ConfigDict(frozen=True)

    real: float
    imag: float = 0.0
    size: int = Field(..., ge=1)
    kind: Optional[BlockKind] = None

    @model_validator(mode="after")
    def _check_pair(self):
        if self.kind is BlockKind.COMPLEX_PAIR and self.imag == 0.0 and not self.real < 0:
            raise ValueError("a paired block with zero imaginary part must have a negative eigenvalue")
        if self.kind is BlockKind.REAL and self.imag != 0.0:
            raise ValueError("a real block must have a real eigenvalue")
        return self

    @property
    def eigenvalue(self) -> complex:
        return complex(self.real, self.imag)

    @property
    def dimension(self) -> int:
        return 2 * self.size if self.kind is BlockKind.COMPLEX_PAIR else self.size


class BlockCount(BaseModel):
    model_config = ConfigDict(frozen=True)

    real: float
    imag: float
    size: int
    count: int
    kind: Optional[BlockKind] = None


class JordanStructure(BaseModel):
    model_config = ConfigDict(frozen=True)

    blocks: List[JordanBlockSpec]
    dimension: int = Field(..., ge=0)

    @model_validator(mode="after")
    def _check_dimension(self):
        total = sum(block.dimension for block in self.blocks)
        if total != self.dimension:
            raise ValueError(f"block dimensions sum to {total}, expected {self.dimension}")
        return self

    def counts(self) -> List[BlockCount]:
        """Identical blocks grouped as (eigenvalue, size, count), in block order."""
        grouped: Dict[Tuple[float, float, int, Optional[BlockKind]], int] = {}
        for block in self.blocks:
            key = (block.real, block.imag, block.size, block.kind)
            grouped[key] = grouped.get(key, 0) + 1
        return [BlockCount(real=re, imag=im, size=size, count=count, kind=kind)
                for (re, im, size, kind), count in grouped.items()]

    @property
    def is_semisimple(self) -> bool:
        return all(block.size == 1 for block in self.blocks)


class ComplexJordanForm(BaseModel):
    """A = P J P^-1 with J rebuilt from structure."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    P: np.ndarray
    structure: JordanStructure
    residual: float


class RealJordanForm(BaseModel):
    """A = P J P^-1 with P real and J the real Jordan matrix of structure."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    P: np.ndarray
    structure: JordanStructure
    residual: float


class OffendingBlock(BaseModel):
    model_config = ConfigDict(frozen=True)

    eigenvalue: float
    size: int
    count: int

    def describe(self) -> str:
        return f"({self.eigenvalue:.17g}, size {self.size}, count {self.count})"


class ExistenceVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    exists: bool
    invertible: bool
    offending: List[OffendingBlock] = Field(default_factory=list)
    caveat: Optional[str] = None

    @model_validator(mode="after")
    def _check_consistency(self):
        if self.exists and (not self.invertible or self.offending):
            raise ValueError("an existing root or logarithm needs an invertible matrix and no offending blocks")
        if not self.exists and self.invertible and not self.offending:
            raise ValueError("a negative verdict on an invertible matrix must name offending blocks")
        return self

    def describe(self) -> str:
        if self.exists:
            return "exists"
        if not self.invertible:
            return "matrix is singular"
        return "offending blocks " + ", ".join(block.describe() for block in self.offending)


class FnResult(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: np.ndarray
    residual: float
    branch: Branch
    domain_ok: bool
    warnings: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _principal_in_domain(self):
        if self.branch is Branch.PRINCIPAL and not self.domain_ok:
            raise ValueError("a principal result must lie in its domain")
        return self


class IssReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k: int = Field(..., ge=0)
    series_terms: int = Field(..., ge=0)
    final_closeness: float
    closeness_history: List[float] = Field(default_factory=list)
    value: np.ndarray
    residual: float = 0.0


class MatrixPayload(BaseModel):
    """JSON matrix file: {"n": int, "rows": [[...], ...]}"""
    n: int = Field(..., ge=1)
    rows: List[List[float]]

    @model_validator(mode="after")
    def _check_square(self):
        if len(self.rows) != self.n or any(len(row) != self.n for row in self.rows):
            raise ValueError(f"rows do not form a {self.n}x{self.n} matrix")
        return self


class MatfnRequest(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    command: str
    matrix: np.ndarray
    tolerances: Tolerances = Field(default_factory=Tolerances)
    branch: str = "principal"
    p: Optional[int] = None
    kind: Optional[ResidualKind] = None
    candidate: Optional[np.ndarray] = None


class Report(BaseModel):
    """Everything a subcommand prints, in either text or JSON form."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    command: str
    n: int = 0
    matrix: Optional[np.ndarray] = None
    residual: Optional[float] = None
    verdict: Optional[ExistenceVerdict] = None
    eigenvalues: List[Eigenvalue] = Field(default_factory=list)
    blocks: List[BlockCount] = Field(default_factory=list)
    branch: Optional[str] = None
    domain_ok: Optional[bool] = None
    details: Dict[str, Any] = Field(default_factory=dict)
    warnings: List[str] = Field(default_factory=list)
    timing_ms: float = 0.0
    exit_code: int = 0
    message: Optional[str] = None

    @field_serializer("matrix")
    def _serialize_matrix(self, matrix: Optional[np.ndarray]):
        return None if matrix is None else np.asarray(matrix, dtype=float).tolist()
