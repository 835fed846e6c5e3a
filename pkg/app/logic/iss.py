"""
Inverse scaling and squaring logarithm: log(A) = 2^k log(A^(1/2^k)).

Principal square roots are taken until A^(1/2^k) is within the closeness
threshold of I in the 1-norm; the logarithm of the last root is then the
Mercator series, truncated where its tail bound drops below eps.
"""

import logging
from typing import Optional

import numpy as np

from app.config.settings import settings
from app.logic.linalg_core import as_real_matrix, operator_norm, relative_error
from app.logic.matfuncs import expm, log_series, principal_sqrt
from app.models.errors import BudgetExceeded, InvalidMatrix, NonConvergence
from app.models.pydantic.models import EPS, IssReport, ResidualKind, Tolerances

logger = logging.getLogger(__name__)

# expm(value) must reproduce A to this relative accuracy
ISS_ACCEPT = 1e-7


def series_terms_for(closeness: float) -> int:
    """Smallest m with closeness^(m+1) / ((m+1)(1 - closeness)) < eps."""
    if closeness >= 1.0:
        raise NonConvergence(f"series diverges at closeness {closeness:.3g}")
    m = 0
    while closeness ** (m + 1) / ((m + 1) * (1.0 - closeness)) >= EPS:
        m += 1
    return m


def iss_log(A, k_max: Optional[int] = None, tol: Optional[Tolerances] = None) -> IssReport:
    A = as_real_matrix(A)
    tol = tol or Tolerances()
    k_max = settings.ISS_K_MAX if k_max is None else int(k_max)
    threshold = settings.ISS_CLOSENESS
    n = A.shape[0]
    identity = np.eye(n)

    root = A
    k = 0
    closeness = operator_norm(root - identity)
    history = [closeness]
    while closeness > threshold:
        if k >= k_max:
            raise BudgetExceeded(
                f"closeness {closeness:.3g} still above {threshold} after {k_max} square roots")
        root = principal_sqrt(root, tol).value
        k += 1
        closeness = operator_norm(root - identity)
        history.append(closeness)
        logger.debug("iss_log: k=%d closeness=%.3g", k, closeness)

    m = series_terms_for(closeness)
    value = 2.0 ** k * log_series(root - identity, m + 1)
    error = relative_error(expm(value), A)
    if error > ISS_ACCEPT:
        raise NonConvergence(f"inverse scaling and squaring residual {error:.3g} exceeds {ISS_ACCEPT}")
    logger.debug("iss_log: n=%d roots=%d series_terms=%d residual=%.3g", n, k, m, error)
    return IssReport(k=k, series_terms=m, final_closeness=closeness,
                     closeness_history=history, value=value, residual=error)


def residual(A, X, kind: ResidualKind, p: Optional[int] = None) -> float:
    """Relative 1-norm residual of X as a logarithm, square root or p-th root of A."""
    A = as_real_matrix(A)
    X = as_real_matrix(X)
    if A.shape != X.shape:
        raise InvalidMatrix(f"shape mismatch: {A.shape} vs {X.shape}")
    kind = ResidualKind(kind)
    if kind is ResidualKind.LOG:
        return relative_error(expm(X), A)
    if kind is ResidualKind.SQRT:
        return relative_error(X @ X, A)
    if p is None or p < 2:
        raise ValueError("a root residual needs an order p >= 2")
    return relative_error(np.linalg.matrix_power(X, int(p)), A)
