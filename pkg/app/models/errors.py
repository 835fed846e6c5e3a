"""
Exception hierarchy for matfn.
Every error carries the CLI exit code it maps to: 1 for bad input, 2 for
existence or precondition failures, 3 for numerical failures.
"""

from typing import List, Optional, Tuple

import numpy as np


class MatfnError(np.linalg.LinAlgError):
    """Base class for all matfn failures"""
    exit_code = 3


class InvalidMatrix(MatfnError, ValueError):
    """Input is not a finite square matrix, or a file could not be parsed"""
    exit_code = 1


# ─────────────────────────────────────────────────────────────────────────────
# Existence / precondition failures
# ─────────────────────────────────────────────────────────────────────────────

class Singular(MatfnError):
    """A pivot or eigenvalue fell below the zero threshold"""
    exit_code = 2


class NegativeEigenvalue(MatfnError):
    """A principal function was asked for on a matrix with a negative real eigenvalue"""
    exit_code = 2

    def __init__(self, message: str, eigenvalues: Optional[List[float]] = None):
        super().__init__(message)
        self.eigenvalues = eigenvalues or []


class NotUnipotent(MatfnError):
    """(U - I)^r is not zero within tolerance"""
    exit_code = 2


class ParityViolation(MatfnError):
    """Some negative real eigenvalue has an odd number of identical Jordan blocks"""
    exit_code = 2

    def __init__(self, offending: List[Tuple[float, int, int]]):
        self.offending = list(offending)
        listing = ", ".join(f"({alpha:.17g}, size {size}, count {count})" for alpha, size, count in self.offending)
        super().__init__(f"odd number of identical negative-eigenvalue blocks: {listing}")


class NoRealLog(MatfnError):
    """The matrix has no real logarithm"""
    exit_code = 2

    def __init__(self, verdict):
        self.verdict = verdict
        super().__init__(f"matrix has no real logarithm: {verdict.describe()}")


class NoRealSqrt(MatfnError):
    """The matrix has no real square root (or is singular)"""
    exit_code = 2

    def __init__(self, verdict):
        self.verdict = verdict
        super().__init__(f"matrix has no real square root: {verdict.describe()}")


# ─────────────────────────────────────────────────────────────────────────────
# Numerical failures
# ─────────────────────────────────────────────────────────────────────────────

class NonConvergence(MatfnError):
    """An iteration failed, or a computed value missed its residual bound"""


class StructureInconsistent(MatfnError):
    """The Weyr staircase does not add up to the algebraic multiplicity"""


class ChainFailure(MatfnError):
    """No admissible Jordan chain generator, or the form does not reconstruct A"""


class BudgetExceeded(MatfnError):
    """Inverse scaling and squaring did not reach the identity neighbourhood"""


class DomainViolation(MatfnError):
    """A principal result has eigenvalues outside its uniqueness domain"""
