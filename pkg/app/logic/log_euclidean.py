"""
Log-Euclidean distance and mean on symmetric positive definite matrices.

log maps the SPD cone diffeomorphically onto the symmetric matrices, so
distances and weighted means can be taken there:

    d(A, B) = ||log A - log B||_F,    mean = exp(sum_i w_i log A_i)
"""

import logging
from typing import List, Optional, Sequence

import numpy as np

from app.logic.linalg_core import as_real_matrix, operator_norm
from app.logic.matfuncs import expm, principal_log
from app.models.errors import InvalidMatrix
from app.models.pydantic.models import EPS, Tolerances

logger = logging.getLogger(__name__)


def _spd(A) -> np.ndarray:
    A = as_real_matrix(A)
    n = A.shape[0]
    if operator_norm(A - A.T) > 10 * n * EPS * max(operator_norm(A), 1.0):
        raise InvalidMatrix("matrix is not symmetric")
    smallest = float(np.min(np.linalg.eigvalsh((A + A.T) / 2)))
    if smallest <= 0:
        raise InvalidMatrix(f"matrix is not positive definite (smallest eigenvalue {smallest:.3g})")
    return A


def _spd_log(A, tol: Tolerances) -> np.ndarray:
    L = principal_log(_spd(A), tol).value
    return (L + L.T) / 2


def log_euclidean_distance(A, B, tol: Optional[Tolerances] = None) -> float:
    tol = tol or Tolerances()
    LA, LB = _spd_log(A, tol), _spd_log(B, tol)
    if LA.shape != LB.shape:
        raise InvalidMatrix(f"shape mismatch: {LA.shape} vs {LB.shape}")
    return float(np.linalg.norm(LA - LB, "fro"))


def log_euclidean_mean(matrices: Sequence, weights: Optional[Sequence[float]] = None,
                       tol: Optional[Tolerances] = None) -> np.ndarray:
    """Weighted mean exp(sum_i w_i log A_i); weights default to uniform and are normalized."""
    tol = tol or Tolerances()
    if not matrices:
        raise InvalidMatrix("no matrices to average")
    logs: List[np.ndarray] = [_spd_log(A, tol) for A in matrices]
    if any(L.shape != logs[0].shape for L in logs):
        raise InvalidMatrix("matrices differ in size")
    w = np.ones(len(logs)) if weights is None else np.asarray(weights, dtype=np.float64)
    if w.shape != (len(logs),) or np.any(w < 0) or w.sum() <= 0:
        raise ValueError("weights must be non-negative, one per matrix, with a positive sum")
    w = w / w.sum()
    L = sum(wi * Li for wi, Li in zip(w, logs))
    mean = expm((L + L.T) / 2)
    logger.debug("log_euclidean_mean: %d matrices of size %d", len(logs), L.shape[0])
    return (mean + mean.T) / 2
