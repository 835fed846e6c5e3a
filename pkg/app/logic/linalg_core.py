"""
Dense real/complex matrix substrate: validation, eigenvalues with
clustering, LU solves, pivoted-QR rank, norms and polynomial evaluation.
"""

import logging
from typing import List, Optional, Sequence

import numpy as np

from app.models.errors import InvalidMatrix, NonConvergence, Singular
from app.models.pydantic.models import EPS, Eigenvalue, Tolerances

logger = logging.getLogger(__name__)


def as_real_matrix(A) -> np.ndarray:
    """Validate and copy A into a square, finite float64 array."""
    try:
        M = np.array(A, dtype=np.float64)
    except (TypeError, ValueError) as e:
        raise InvalidMatrix(f"not a real matrix: {e}") from e
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise InvalidMatrix(f"expected a non-empty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise InvalidMatrix("matrix has NaN or infinite entries")
    return M


def as_complex_matrix(A) -> np.ndarray:
    try:
        M = np.array(A, dtype=np.complex128)
    except (TypeError, ValueError) as e:
        raise InvalidMatrix(f"not a complex matrix: {e}") from e
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise InvalidMatrix(f"expected a non-empty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise InvalidMatrix("matrix has NaN or infinite entries")
    return M


def operator_norm(A) -> float:
    """1-norm (max absolute column sum); submultiplicative."""
    return float(np.linalg.norm(np.asarray(A), 1))


def relative_error(B: np.ndarray, A: np.ndarray) -> float:
    """||B - A||_1 / ||A||_1, or the absolute error when A is zero."""
    scale = operator_norm(A)
    diff = operator_norm(np.asarray(B) - np.asarray(A))
    return diff / scale if scale > 0 else diff


def poly_eval(coefficients: Sequence[float], A) -> np.ndarray:
    """
    Horner evaluation of p(A) for p given highest degree first
    (numpy.poly convention), so [1, -2, 3, -1] is X^3 - 2X^2 + 3X - 1.
    """
    A = as_real_matrix(A)
    n = A.shape[0]
    identity = np.eye(n)
    result = np.zeros((n, n))
    for c in coefficients:
        result = result @ A + float(c) * identity
    return result


# ─────────────────────────────────────────────────────────────────────────────
# Eigenvalues
# ─────────────────────────────────────────────────────────────────────────────

def raw_eigenvalues(A: np.ndarray) -> np.ndarray:
    """
    LAPACK dgeev: balancing, Hessenberg reduction, Francis double-shift QR.
    Complex eigenvalues of a real matrix come back as exact conjugate pairs.
    """
    try:
        return np.linalg.eigvals(A)
    except np.linalg.LinAlgError as e:
        raise NonConvergence(f"QR iteration failed to converge: {e}") from e


def cluster_eigenvalues(values: np.ndarray, cluster_tol: float) -> List[Eigenvalue]:
    """
    Single-linkage clustering of eigenvalues within cluster_tol. Each
    cluster is represented by its mean; a mean with |imag| <= cluster_tol
    is reported as real, and clusters above the real axis are mirrored so
    conjugate pairs are exact.
    """
    values = np.asarray(values, dtype=np.complex128)
    count = len(values)
    labels = list(range(count))

    def find(i):
        while labels[i] != i:
            labels[i] = labels[labels[i]]
            i = labels[i]
        return i

    for i in range(count):
        for j in range(i + 1, count):
            if abs(values[i] - values[j]) <= cluster_tol:
                labels[find(i)] = find(j)

    groups = {}
    for i in range(count):
        groups.setdefault(find(i), []).append(values[i])

    upper, real = [], []
    for members in groups.values():
        # identical members keep their exact value
        mean = complex(members[0] if all(m == members[0] for m in members) else np.mean(members))
        if abs(mean.imag) <= cluster_tol:
            real.append((mean.real, len(members)))
        elif mean.imag > 0:
            upper.append((mean, len(members)))

    result = [Eigenvalue(real=re, imag=0.0, algebraic_multiplicity=m) for re, m in real]
    for mean, m in upper:
        result.append(Eigenvalue(real=mean.real, imag=mean.imag, algebraic_multiplicity=m))
        result.append(Eigenvalue(real=mean.real, imag=-mean.imag, algebraic_multiplicity=m))

    total = sum(e.algebraic_multiplicity for e in result)
    if total != count:
        # a cluster below the axis without a mirror image above it
        raise NonConvergence(f"eigenvalue clusters are not conjugate-symmetric ({total} of {count} paired)")
    result.sort(key=lambda e: (e.real, e.imag))
    return result


def eigenvalues(A, tol: Optional[Tolerances] = None) -> List[Eigenvalue]:
    """Clustered spectrum of a real matrix, multiplicities summing to n."""
    A = as_real_matrix(A)
    tol = tol or Tolerances()
    cluster_tol = tol.cluster_for(A)
    spectrum = cluster_eigenvalues(raw_eigenvalues(A), cluster_tol)
    logger.debug("eigenvalues: n=%d clusters=%d cluster_tol=%.3g", A.shape[0], len(spectrum), cluster_tol)
    return spectrum


# ─────────────────────────────────────────────────────────────────────────────
# LU with partial pivoting
# ─────────────────────────────────────────────────────────────────────────────

def lu_factor(A: np.ndarray, pivot_tol: float):
    """
    In-place Doolittle LU with partial pivoting on a copy of A.
    Returns (LU, perm) with A[perm] = L U, L unit lower triangular.
    """
    LU = np.array(A, dtype=np.result_type(A, np.float64), copy=True)
    n = LU.shape[0]
    perm = np.arange(n)
    for k in range(n):
        p = k + int(np.argmax(np.abs(LU[k:, k])))
        if abs(LU[p, k]) <= pivot_tol:
            raise Singular(f"pivot {abs(LU[p, k]):.3g} at column {k} is below {pivot_tol:.3g}")
        if p != k:
            LU[[k, p]] = LU[[p, k]]
            perm[[k, p]] = perm[[p, k]]
        LU[k + 1:, k] /= LU[k, k]
        LU[k + 1:, k + 1:] -= np.outer(LU[k + 1:, k], LU[k, k + 1:])
    return LU, perm


def lu_solve(LU: np.ndarray, perm: np.ndarray, B: np.ndarray) -> np.ndarray:
    X = np.array(B[perm], dtype=np.result_type(LU, B), copy=True)
    n = LU.shape[0]
    for i in range(n):
        X[i] -= LU[i, :i] @ X[:i]
    for i in range(n - 1, -1, -1):
        X[i] = (X[i] - LU[i, i + 1:] @ X[i + 1:]) / LU[i, i]
    return X


def solve(A, B, tol: Optional[Tolerances] = None) -> np.ndarray:
    """Solve A X = B. Real or complex; Singular on a pivot below rank_tol."""
    A = np.asarray(A)
    B = np.asarray(B)
    tol = tol or Tolerances()
    LU, perm = lu_factor(A, tol.rank_for(A))
    return lu_solve(LU, perm, B)


def inverse(A, tol: Optional[Tolerances] = None) -> np.ndarray:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InvalidMatrix(f"expected a square matrix, got shape {A.shape}")
    return solve(A, np.eye(A.shape[0], dtype=A.dtype), tol)


# ─────────────────────────────────────────────────────────────────────────────
# Rank
# ─────────────────────────────────────────────────────────────────────────────

def numerical_rank(M: np.ndarray, threshold: float) -> int:
    """
    Householder QR with column pivoting; the rank is the number of pivot
    columns whose remaining norm exceeds threshold.
    """
    R = np.array(M, dtype=np.result_type(M, np.float64), copy=True)
    rows, cols = R.shape
    rank = 0
    for k in range(min(rows, cols)):
        norms = np.linalg.norm(R[k:, k:], axis=0)
        j = k + int(np.argmax(norms))
        if norms[j - k] <= threshold:
            break
        if j != k:
            R[:, [k, j]] = R[:, [j, k]]
        x = R[k:, k]
        alpha = np.linalg.norm(x)
        v = x.copy()
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v[0] += phase * alpha
        v /= np.linalg.norm(v)
        R[k:, k:] -= 2.0 * np.outer(v, v.conj() @ R[k:, k:])
        rank += 1
    return rank


def is_singular(A: np.ndarray, values: Sequence[complex], tol: Tolerances) -> bool:
    """
    A is numerically singular when its pivoted-QR rank falls short of n or
    a clustered eigenvalue lies within the rank threshold of zero.
    """
    threshold = tol.rank_for(A)
    if any(abs(v) <= threshold for v in values):
        return True
    return numerical_rank(A, threshold) < A.shape[0]
