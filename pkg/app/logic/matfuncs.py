"""
Matrix exponential, logarithm, square root and p-th root of real matrices.

Every logarithm and root goes through the real Jordan form: each block is
treated as D(I + N) with D semisimple and N nilpotent commuting with it, so
log(D(I + N)) = log D + log(I + N) and (D(I + N))^(1/p) = D^(1/p) (I + N)^(1/p),
where the nilpotent parts are finite series. The principal functions stay
in their uniqueness domains: imaginary parts in (-pi, pi) for the
logarithm, positive real parts for the square root and arguments in
(-pi/p, pi/p) for the p-th root.

real_log and real_sqrt return one representative when A has negative
eigenvalues. Other real logarithms differ on each block by 2*pi*h*I terms
in the complex sense and by 2*pi*l*E shifts on rotation cells; they are not
enumerated here.
"""

import logging
import math
from typing import Callable, List, Optional

import numpy as np

from app.config.settings import settings
from app.logic.jordan import (
    jordan_chains,
    jordan_structure,
    pair_negative_blocks,
    real_jordan_form,
)
from app.logic.linalg_core import (
    as_complex_matrix,
    as_real_matrix,
    eigenvalues,
    inverse,
    is_singular,
    operator_norm,
    relative_error,
)
from app.models.errors import (
    NegativeEigenvalue,
    DomainViolation,
    NoRealLog,
    NoRealSqrt,
    NonConvergence,
    NotUnipotent,
    Singular,
)
from app.models.pydantic.models import (
    EPS,
    BlockKind,
    Branch,
    ExistenceVerdict,
    FnResult,
    JordanBlockSpec,
    OffendingBlock,
    RealJordanForm,
    Tolerances,
)

logger = logging.getLogger(__name__)

_MAX_TAYLOR_TERMS = 1000


# ─────────────────────────────────────────────────────────────────────────────
# Exponential
# ─────────────────────────────────────────────────────────────────────────────

def expm(A, scaling: Optional[int] = None) -> np.ndarray:
    """
    Scaling and squaring with a truncated Taylor series. By default the
    exponent s makes ||A||_1 / 2^s <= 1/2; the series stops once the bound
    ||B||^k / k! on the next term drops below eps times the partial sum.
    """
    A = as_complex_matrix(A) if np.iscomplexobj(A) else as_real_matrix(A)
    n = A.shape[0]
    norm = operator_norm(A)
    if scaling is None:
        s = 0 if norm <= 0.5 else int(math.ceil(math.log2(norm / 0.5)))
    else:
        s = max(0, int(scaling))
    B = A / 2.0 ** s
    b_norm = operator_norm(B)

    result = np.eye(n, dtype=A.dtype)
    term = np.eye(n, dtype=A.dtype)
    bound = 1.0
    for k in range(1, _MAX_TAYLOR_TERMS + 1):
        bound *= b_norm / k
        if bound < EPS * operator_norm(result):
            break
        term = term @ B / k
        result = result + term
    else:
        raise NonConvergence(f"Taylor series did not settle within {_MAX_TAYLOR_TERMS} terms (scaling {s})")

    for _ in range(s):
        result = result @ result
    logger.debug("expm: n=%d scaling=%d terms=%d", n, s, k - 1)
    return result


# ─────────────────────────────────────────────────────────────────────────────
# Unipotent series
# ─────────────────────────────────────────────────────────────────────────────

def log_series(N: np.ndarray, terms: int) -> np.ndarray:
    """N - N^2/2 + N^3/3 - ... with terms - 1 summands (N^terms = 0)."""
    result = np.zeros_like(N)
    power = np.eye(N.shape[0], dtype=N.dtype)
    for k in range(1, terms):
        power = power @ N
        result = result + ((-1) ** (k + 1) / k) * power
    return result


def _binomial_series(N: np.ndarray, exponent: float, terms: int) -> np.ndarray:
    """(I + N)^exponent as sum_k C(exponent, k) N^k for k < terms."""
    result = np.eye(N.shape[0], dtype=N.dtype)
    power = np.eye(N.shape[0], dtype=N.dtype)
    coefficient = 1.0
    for k in range(1, terms):
        coefficient *= (exponent - k + 1) / k
        power = power @ N
        result = result + coefficient * power
    return result


def _nilpotent_part(U: np.ndarray, r: Optional[int], tol: Optional[Tolerances]):
    U = as_real_matrix(U)
    n = U.shape[0]
    r = n if r is None else int(r)
    if r < 1:
        raise ValueError("nilpotency bound must be positive")
    N = U - np.eye(n)
    if tol is not None and tol.rank_tol is not None:
        threshold = tol.rank_tol
    else:
        threshold = settings.RANK_TOL_SCALE * n * EPS * max(1.0, operator_norm(N)) ** r
    excess = float(np.max(np.abs(np.linalg.matrix_power(N, r))))
    if excess > threshold:
        raise NotUnipotent(f"(U - I)^{r} has an entry of size {excess:.3g} above {threshold:.3g}")
    return N, r


def log_unipotent(U, r: Optional[int] = None, tol: Optional[Tolerances] = None) -> np.ndarray:
    """log(I + N) for unipotent U = I + N with N^r = 0, as a finite sum."""
    N, r = _nilpotent_part(U, r, tol)
    return log_series(N, r)


def root_unipotent(U, p: int, r: Optional[int] = None, tol: Optional[Tolerances] = None) -> np.ndarray:
    """The unipotent p-th root (I + N)^(1/p), as a finite binomial sum."""
    if int(p) != p or p < 2:
        raise ValueError(f"root order must be an integer >= 2, got {p}")
    N, r = _nilpotent_part(U, r, tol)
    return _binomial_series(N, 1.0 / p, r)


# ─────────────────────────────────────────────────────────────────────────────
# Existence
# ─────────────────────────────────────────────────────────────────────────────

def _parity_verdict(A: np.ndarray, tol: Tolerances) -> ExistenceVerdict:
    structure = jordan_structure(A, tol)
    invertible = not is_singular(A, [block.eigenvalue for block in structure.blocks], tol)
    offending = [
        OffendingBlock(eigenvalue=count.real, size=count.size, count=count.count)
        for count in structure.counts()
        if count.imag == 0 and count.real < 0 and count.count % 2 == 1
    ]
    return ExistenceVerdict(exists=invertible and not offending, invertible=invertible, offending=offending)


def has_real_log(A, tol: Optional[Tolerances] = None) -> ExistenceVerdict:
    """
    A real logarithm exists iff A is invertible and every Jordan block
    J_r(alpha) with alpha < 0 occurs an even number of times.
    """
    A = as_real_matrix(A)
    return _parity_verdict(A, tol or Tolerances())


def has_real_sqrt(A, tol: Optional[Tolerances] = None) -> ExistenceVerdict:
    """The same parity criterion, which covers invertible matrices only."""
    A = as_real_matrix(A)
    verdict = _parity_verdict(A, tol or Tolerances())
    if not verdict.invertible:
        return verdict.model_copy(update={
            "caveat": "singular matrix: the parity criterion applies to invertible matrices only"})
    return verdict


# ─────────────────────────────────────────────────────────────────────────────
# Block-wise construction
# ─────────────────────────────────────────────────────────────────────────────

def _polar(block: JordanBlockSpec):
    """rho and theta in [-pi, pi) of the eigenvalue carried by a paired block."""
    rho = math.hypot(block.real, block.imag)
    theta = -math.pi if block.imag == 0 else math.atan2(block.imag, block.real)
    return rho, theta


def _block_nilpotent(block: JordanBlockSpec) -> np.ndarray:
    """N with J = D (I + N); N = D^-1 H for the superdiagonal part H."""
    shift = np.eye(block.size, k=1)
    if block.kind is BlockKind.COMPLEX_PAIR:
        lam, mu = block.real, block.imag
        cell_inverse = np.array([[lam, mu], [-mu, lam]]) / (lam * lam + mu * mu)
        return np.kron(shift, cell_inverse)
    return shift / block.real


def _rotation(angle: float) -> np.ndarray:
    return np.array([[math.cos(angle), -math.sin(angle)], [math.sin(angle), math.cos(angle)]])


def _log_block(block: JordanBlockSpec) -> np.ndarray:
    N = _block_nilpotent(block)
    if block.kind is BlockKind.COMPLEX_PAIR:
        rho, theta = _polar(block)
        cell = np.array([[math.log(rho), -theta], [theta, math.log(rho)]])
        return np.kron(np.eye(block.size), cell) + log_series(N, block.size)
    if block.real <= 0:
        raise NegativeEigenvalue(f"unpaired block at {block.real:.17g}", [block.real])
    return math.log(block.real) * np.eye(block.size) + log_series(N, block.size)


def _root_block(p: int) -> Callable[[JordanBlockSpec], np.ndarray]:
    def root(block: JordanBlockSpec) -> np.ndarray:
        series = _binomial_series(_block_nilpotent(block), 1.0 / p, block.size)
        if block.kind is BlockKind.COMPLEX_PAIR:
            rho, theta = _polar(block)
            cell = rho ** (1.0 / p) * _rotation(theta / p)
            return np.kron(np.eye(block.size), cell) @ series
        if block.real <= 0:
            raise NegativeEigenvalue(f"unpaired block at {block.real:.17g}", [block.real])
        return block.real ** (1.0 / p) * series
    return root


def _blockwise(form: RealJordanForm, block_fn: Callable[[JordanBlockSpec], np.ndarray],
               tol: Tolerances) -> np.ndarray:
    """X = P Y P^-1 with Y the block diagonal of block_fn over the form's blocks."""
    n = form.structure.dimension
    Y = np.zeros((n, n))
    pos = 0
    for block in form.structure.blocks:
        d = block.dimension
        Y[pos:pos + d, pos:pos + d] = block_fn(block)
        pos += d
    return form.P @ Y @ inverse(form.P, tol)


def _principal_spectrum_warnings(A: np.ndarray, tol: Tolerances) -> List[str]:
    """Singular / NegativeEigenvalue unless A is invertible with no eigenvalue on the negative axis."""
    cluster_tol = tol.cluster_for(A)
    spectrum = eigenvalues(A, tol)
    if is_singular(A, [e.value for e in spectrum], tol):
        raise Singular("matrix has a zero eigenvalue")
    negatives = [e.real for e in spectrum if e.imag == 0 and e.real < 0]
    if negatives:
        raise NegativeEigenvalue(f"negative eigenvalues {negatives}", negatives)
    warnings = []
    near = settings.BORDERLINE_FACTOR * cluster_tol
    for e in spectrum:
        if e.real < 0 and abs(e.imag) <= near:
            message = f"eigenvalue {e.value:.6g} lies within {near:.3g} of the negative real axis"
            logger.warning(message)
            warnings.append(message)
    return warnings


def _check_residual(residual: float, tol: Tolerances, what: str) -> None:
    if residual > tol.residual_tol:
        raise NonConvergence(f"{what} residual {residual:.3g} exceeds {tol.residual_tol:.3g}")


def _in_strip(X: np.ndarray, tol: Tolerances) -> bool:
    return all(abs(e.imag) < math.pi for e in eigenvalues(X, tol))


def _in_sector(X: np.ndarray, p: int, tol: Tolerances) -> bool:
    limit = math.pi / p
    return all(abs(e.value) > 0 and abs(math.atan2(e.imag, e.real)) < limit for e in eigenvalues(X, tol))


def _in_right_half_plane(X: np.ndarray, tol: Tolerances) -> bool:
    return all(e.real > 0 for e in eigenvalues(X, tol))


def _domain_tolerances(tol: Tolerances) -> Tolerances:
    # the result's own spectrum is clustered on its own scale
    return Tolerances(residual_tol=tol.residual_tol)


# ─────────────────────────────────────────────────────────────────────────────
# Logarithms
# ─────────────────────────────────────────────────────────────────────────────

def real_log(A, tol: Optional[Tolerances] = None) -> FnResult:
    """
    A real X with expm(X) = A, built on the paired real Jordan form; the
    rotation angle of every paired block is taken in [-pi, pi).
    """
    A = as_real_matrix(A)
    tol = tol or Tolerances()
    verdict = has_real_log(A, tol)
    if not verdict.exists:
        raise NoRealLog(verdict)
    form = pair_negative_blocks(real_jordan_form(A, tol))
    X = _blockwise(form, _log_block, tol)
    residual = relative_error(expm(X), A)
    _check_residual(residual, tol, "logarithm")
    return FnResult(value=X, residual=residual, branch=Branch.CONSTRUCTED,
                    domain_ok=_in_strip(X, _domain_tolerances(tol)))


def principal_log(A, tol: Optional[Tolerances] = None) -> FnResult:
    """The unique real logarithm whose eigenvalues have imaginary parts in (-pi, pi)."""
    A = as_real_matrix(A)
    tol = tol or Tolerances()
    warnings = _principal_spectrum_warnings(A, tol)
    X = _blockwise(real_jordan_form(A, tol), _log_block, tol)
    residual = relative_error(expm(X), A)
    _check_residual(residual, tol, "logarithm")
    if not _in_strip(X, _domain_tolerances(tol)):
        raise DomainViolation("logarithm has an eigenvalue with |imaginary part| >= pi")
    return FnResult(value=X, residual=residual, branch=Branch.PRINCIPAL, domain_ok=True, warnings=warnings)


def complex_log(A, tol: Optional[Tolerances] = None) -> np.ndarray:
    """
    Principal complex logarithm of an invertible real matrix through the
    complex Jordan form: log(alpha) I + log(I + N / alpha) on every block,
    with Arg(alpha) in (-pi, pi].
    """
    A = as_real_matrix(A)
    tol = tol or Tolerances()
    form = jordan_chains(A, jordan_structure(A, tol), tol)
    if is_singular(A, [block.eigenvalue for block in form.structure.blocks], tol):
        raise Singular("matrix has a zero eigenvalue")
    n = A.shape[0]
    Y = np.zeros((n, n), dtype=np.complex128)
    pos = 0
    for block in form.structure.blocks:
        alpha = block.eigenvalue
        N = np.eye(block.size, k=1, dtype=np.complex128) / alpha
        Y[pos:pos + block.size, pos:pos + block.size] = np.log(alpha) * np.eye(block.size) + log_series(N, block.size)
        pos += block.size
    return form.P @ Y @ inverse(form.P, tol)


# ─────────────────────────────────────────────────────────────────────────────
# Roots
# ─────────────────────────────────────────────────────────────────────────────

def real_sqrt(A, tol: Optional[Tolerances] = None) -> FnResult:
    """A real X with X^2 = A, built on the paired real Jordan form."""
    A = as_real_matrix(A)
    tol = tol or Tolerances()
    verdict = has_real_sqrt(A, tol)
    if not verdict.exists:
        raise NoRealSqrt(verdict)
    form = pair_negative_blocks(real_jordan_form(A, tol))
    X = _blockwise(form, _root_block(2), tol)
    residual = relative_error(X @ X, A)
    _check_residual(residual, tol, "square root")
    return FnResult(value=X, residual=residual, branch=Branch.CONSTRUCTED,
                    domain_ok=_in_right_half_plane(X, _domain_tolerances(tol)))


def _principal_root(A: np.ndarray, p: int, tol: Tolerances):
    warnings = _principal_spectrum_warnings(A, tol)
    X = _blockwise(real_jordan_form(A, tol), _root_block(p), tol)
    residual = relative_error(np.linalg.matrix_power(X, p), A)
    _check_residual(residual, tol, f"order-{p} root")
    return X, residual, warnings


def principal_sqrt(A, tol: Optional[Tolerances] = None) -> FnResult:
    """The unique real square root whose eigenvalues have positive real part."""
    A = as_real_matrix(A)
    tol = tol or Tolerances()
    X, residual, warnings = _principal_root(A, 2, tol)
    if not _in_right_half_plane(X, _domain_tolerances(tol)):
        raise DomainViolation("square root has an eigenvalue with non-positive real part")
    return FnResult(value=X, residual=residual, branch=Branch.PRINCIPAL, domain_ok=True, warnings=warnings)


def principal_root(A, p: int, tol: Optional[Tolerances] = None) -> FnResult:
    """The unique real p-th root whose eigenvalues have arguments in (-pi/p, pi/p)."""
    if int(p) != p or p < 2:
        raise ValueError(f"root order must be an integer >= 2, got {p}")
    p = int(p)
    A = as_real_matrix(A)
    tol = tol or Tolerances()
    X, residual, warnings = _principal_root(A, p, tol)
    if not _in_sector(X, p, _domain_tolerances(tol)):
        raise DomainViolation(f"order-{p} root has an eigenvalue outside the sector |arg| < pi/{p}")
    return FnResult(value=X, residual=residual, branch=Branch.PRINCIPAL, domain_ok=True, warnings=warnings)
