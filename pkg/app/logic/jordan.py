"""
Jordan machinery: elementary divisors through the Weyr staircase, Jordan
chains, the complex and real Jordan forms, the paired form for negative
eigenvalues, and the additive / multiplicative Jordan decompositions.
"""

import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from app.logic.linalg_core import (
    as_real_matrix,
    cluster_eigenvalues,
    inverse,
    numerical_rank,
    raw_eigenvalues,
    relative_error,
)
from app.models.errors import ChainFailure, ParityViolation, Singular, StructureInconsistent
from app.models.pydantic.models import (
    BlockKind,
    ComplexJordanForm,
    JordanBlockSpec,
    JordanStructure,
    RealJordanForm,
    Tolerances,
)

logger = logging.getLogger(__name__)

_KIND_ORDER = {None: 0, BlockKind.REAL: 0, BlockKind.COMPLEX_PAIR: 1}


def _block_key(block: JordanBlockSpec):
    return (block.real, block.imag, -block.size, _KIND_ORDER[block.kind])


def _freeze(M: np.ndarray) -> np.ndarray:
    M.setflags(write=False)
    return M


# ─────────────────────────────────────────────────────────────────────────────
# Elementary divisors
# ─────────────────────────────────────────────────────────────────────────────

def _weyr_block_sizes(A: np.ndarray, lam: complex, multiplicity: int, tol: Tolerances) -> List[int]:
    """
    Block sizes at lam from the staircase nu_k = n - rank((A - lam I)^k):
    nu_k - nu_{k-1} blocks have size >= k.
    """
    if multiplicity == 1:
        return [1]
    n = A.shape[0]
    dtype = np.float64 if lam.imag == 0 else np.complex128
    M = A.astype(dtype) - (lam.real if lam.imag == 0 else lam) * np.eye(n, dtype=dtype)
    power = np.eye(n, dtype=dtype)
    nullities = [0]
    for k in range(1, multiplicity + 1):
        power = power @ M
        nu = n - numerical_rank(power, tol.power_rank_for(A, lam, k))
        if nu > multiplicity or nu <= nullities[-1]:
            raise StructureInconsistent(
                f"staircase at {lam:.6g}: nullities {nullities + [nu]} for multiplicity {multiplicity}")
        nullities.append(nu)
        if nu == multiplicity:
            break
    if nullities[-1] != multiplicity:
        raise StructureInconsistent(
            f"staircase at {lam:.6g} stops at nullity {nullities[-1]} below multiplicity {multiplicity}")

    at_least = [nullities[k] - nullities[k - 1] for k in range(1, len(nullities))] + [0]
    if any(at_least[k] < at_least[k + 1] for k in range(len(at_least) - 1)):
        raise StructureInconsistent(f"staircase at {lam:.6g} is not a partition: {nullities}")
    sizes = []
    for k in range(1, len(at_least)):
        sizes.extend([k] * (at_least[k - 1] - at_least[k]))
    return sorted(sizes, reverse=True)


def jordan_structure(A, tol: Optional[Tolerances] = None) -> JordanStructure:
    """Elementary divisors of A as a multiset of (eigenvalue, size) blocks."""
    A = as_real_matrix(A)
    tol = tol or Tolerances()
    spectrum = cluster_eigenvalues(raw_eigenvalues(A), tol.cluster_for(A))

    upper_sizes: Dict[Tuple[float, float], List[int]] = {}
    blocks = []
    for eig in spectrum:
        if eig.imag < 0:
            continue
        sizes = _weyr_block_sizes(A, eig.value, eig.algebraic_multiplicity, tol)
        upper_sizes[(eig.real, eig.imag)] = sizes
        blocks.extend(JordanBlockSpec(real=eig.real, imag=eig.imag, size=s) for s in sizes)
    for eig in spectrum:
        if eig.imag < 0:
            blocks.extend(JordanBlockSpec(real=eig.real, imag=eig.imag, size=s)
                          for s in upper_sizes[(eig.real, -eig.imag)])

    blocks.sort(key=_block_key)
    logger.debug("jordan_structure: %d blocks over %d eigenvalues", len(blocks), len(spectrum))
    return JordanStructure(blocks=blocks, dimension=A.shape[0])


def jordan_matrix(structure: JordanStructure, superdiagonal: bool = True) -> np.ndarray:
    """
    Rebuild J from a block list. Real forms (every block has a kind) and
    real spectra give a real matrix; otherwise J is complex.
    superdiagonal=False keeps only the block diagonals (the semisimple part).
    """
    real = all(b.kind is not None or b.imag == 0 for b in structure.blocks)
    J = np.zeros((structure.dimension,) * 2, dtype=np.float64 if real else np.complex128)
    pos = 0
    for block in structure.blocks:
        if block.kind is BlockKind.COMPLEX_PAIR:
            cell = np.array([[block.real, -block.imag], [block.imag, block.real]])
            for j in range(block.size):
                at = pos + 2 * j
                J[at:at + 2, at:at + 2] = cell
                if superdiagonal and j > 0:
                    J[at - 2:at, at:at + 2] = np.eye(2)
        else:
            lam = block.real if real else block.eigenvalue
            for j in range(block.size):
                J[pos + j, pos + j] = lam
                if superdiagonal and j > 0:
                    J[pos + j - 1, pos + j] = 1.0
        pos += block.dimension
    return J


# ─────────────────────────────────────────────────────────────────────────────
# Jordan chains
# ─────────────────────────────────────────────────────────────────────────────

def _null_basis(M: np.ndarray, dim: int) -> np.ndarray:
    """Orthonormal basis of the dim-dimensional numerical null space of M."""
    n = M.shape[1]
    if dim == 0:
        return np.zeros((n, 0), dtype=M.dtype)
    _, _, Vh = np.linalg.svd(M)
    return Vh[n - dim:].conj().T


def _random_unitary(rng: np.random.Generator, size: int, complex_valued: bool) -> np.ndarray:
    G = rng.standard_normal((size, size))
    if complex_valued:
        G = G + 1j * rng.standard_normal((size, size))
    Q, _ = np.linalg.qr(G)
    return Q


def _chains_for_eigenvalue(A: np.ndarray, lam: complex, sizes: List[int], tol: Tolerances,
                           rng: Optional[np.random.Generator]) -> List[Tuple[int, np.ndarray]]:
    """
    Generators u, longest chains first. A generator of a size-s chain lies
    in null((A - lam I)^s) and its image under (A - lam I)^(s-1) must be
    independent of the eigenvectors already produced by longer chains;
    among admissible directions the ones with the largest such image are
    taken.
    """
    n = A.shape[0]
    complex_valued = lam.imag != 0
    dtype = np.complex128 if complex_valued else np.float64
    M = A.astype(dtype) - (lam if complex_valued else lam.real) * np.eye(n, dtype=dtype)
    longest = sizes[0]
    powers = [np.eye(n, dtype=dtype)]
    for _ in range(longest):
        powers.append(powers[-1] @ M)

    chains: List[Tuple[int, np.ndarray]] = []
    for s in range(longest, 0, -1):
        wanted = sizes.count(s)
        if wanted == 0:
            continue
        Z = _null_basis(powers[s], sum(min(r, s) for r in sizes))
        images = powers[s - 1] @ Z
        if chains:
            Q, _ = np.linalg.qr(np.column_stack([powers[r - 1] @ u for r, u in chains]))
            images = images - Q @ (Q.conj().T @ images)
        _, sigma, Vh = np.linalg.svd(images, full_matrices=False)
        if len(sigma) < wanted or sigma[wanted - 1] <= tol.power_rank_for(A, lam, s - 1):
            raise ChainFailure(f"no generator for {wanted} chain(s) of length {s} at {lam:.6g}")
        Y = Vh[:wanted].conj().T
        U = Z @ Y
        if rng is not None:
            U = U @ _random_unitary(rng, wanted, complex_valued)
            if s > 1:
                lower = _null_basis(powers[s - 1], sum(min(r, s - 1) for r in sizes))
                mix = rng.standard_normal((lower.shape[1], wanted))
                U = U + 0.5 * (lower @ mix)
        chains.extend((s, U[:, i]) for i in range(wanted))
    return chains


def _chain_columns(M: np.ndarray, size: int, u: np.ndarray) -> np.ndarray:
    chain = [u]
    for _ in range(size - 1):
        chain.insert(0, M @ chain[0])
    return np.column_stack(chain)


def jordan_chains(A, structure: JordanStructure, tol: Optional[Tolerances] = None,
                  seed: Optional[int] = None) -> ComplexJordanForm:
    """
    P whose columns are Jordan chains ((A - lam I)^(r-1) u, ..., u) per
    block, in the block order of structure. Chains for lam below the real
    axis are conjugates of those above it. A seed randomizes the generators
    within their admissible subspace.
    """
    A = as_real_matrix(A)
    tol = tol or Tolerances()
    n = A.shape[0]
    rng = np.random.default_rng(seed) if seed is not None else None

    sizes_at: Dict[Tuple[float, float], List[int]] = {}
    for block in structure.blocks:
        if block.imag >= 0:
            sizes_at.setdefault((block.real, block.imag), []).append(block.size)

    pending: Dict[Tuple[float, float], List[Tuple[int, np.ndarray]]] = {}
    for (re, im), sizes in sizes_at.items():
        pending[(re, im)] = _chains_for_eigenvalue(A, complex(re, im), sorted(sizes, reverse=True), tol, rng)
    for block in structure.blocks:
        if block.imag < 0 and (block.real, block.imag) not in pending:
            pending[(block.real, block.imag)] = [(s, u.conj()) for s, u in pending[(block.real, -block.imag)]]

    columns = []
    for block in structure.blocks:
        lam = block.eigenvalue
        queue = pending[(block.real, block.imag)]
        index = next(i for i, (s, _) in enumerate(queue) if s == block.size)
        size, u = queue.pop(index)
        M = A.astype(np.complex128) - lam * np.eye(n)
        columns.append(_chain_columns(M, size, u.astype(np.complex128)))
    P = np.hstack(columns)

    try:
        P_inv = inverse(P, tol)
    except Singular as e:
        raise ChainFailure(f"chain matrix is singular: {e}") from e
    residual = relative_error(P @ jordan_matrix(structure) @ P_inv, A)
    if residual > tol.residual_tol:
        raise ChainFailure(f"complex Jordan form residual {residual:.3g} exceeds {tol.residual_tol:.3g}")
    return ComplexJordanForm(P=_freeze(P), structure=structure, residual=residual)


# ─────────────────────────────────────────────────────────────────────────────
# Real forms
# ─────────────────────────────────────────────────────────────────────────────

def _sorted_blocks(entries: List[Tuple[JordanBlockSpec, np.ndarray]], dimension: int):
    entries = sorted(entries, key=lambda entry: _block_key(entry[0]))
    structure = JordanStructure(blocks=[spec for spec, _ in entries], dimension=dimension)
    P = np.hstack([cols for _, cols in entries]).astype(np.float64)
    return structure, P


def _split_columns(P: np.ndarray, structure: JordanStructure):
    pos = 0
    for block in structure.blocks:
        yield block, P[:, pos:pos + block.dimension]
        pos += block.dimension


def real_jordan_form(A, tol: Optional[Tolerances] = None, seed: Optional[int] = None) -> RealJordanForm:
    """
    Real P and real block list. A conjugate pair of chains u_k + i v_k
    becomes the basis (v_1, u_1, ..., v_r, u_r), whose matrix has diagonal
    cells L(lam, mu) = [[lam, -mu], [mu, lam]] and identity superdiagonal cells.
    """
    A = as_real_matrix(A)
    tol = tol or Tolerances()
    complex_form = jordan_chains(A, jordan_structure(A, tol), tol, seed)

    entries = []
    for block, cols in _split_columns(complex_form.P, complex_form.structure):
        if block.imag == 0:
            spec = JordanBlockSpec(real=block.real, size=block.size, kind=BlockKind.REAL)
            entries.append((spec, cols.real))
        elif block.imag > 0:
            paired = np.empty((cols.shape[0], 2 * block.size))
            paired[:, 0::2] = cols.imag
            paired[:, 1::2] = cols.real
            spec = JordanBlockSpec(real=block.real, imag=block.imag, size=block.size, kind=BlockKind.COMPLEX_PAIR)
            entries.append((spec, paired))
    structure, P = _sorted_blocks(entries, A.shape[0])
    try:
        P_inv = inverse(P, tol)
    except Singular as e:
        raise ChainFailure(f"real chain matrix is singular: {e}") from e
    residual = relative_error(P @ jordan_matrix(structure) @ P_inv, A)
    if residual > tol.residual_tol:
        raise ChainFailure(f"real Jordan form residual {residual:.3g} exceeds {tol.residual_tol:.3g}")
    return RealJordanForm(P=_freeze(P), structure=structure, residual=residual)


def pair_negative_blocks(form: RealJordanForm) -> RealJordanForm:
    """
    Merge each pair of identical blocks J_r(alpha), alpha < 0, into one
    J_2r(alpha, 0) by interleaving their chains. ParityViolation names every
    (alpha, r, count) whose count is odd.
    """
    negative: Dict[Tuple[float, int], List[np.ndarray]] = {}
    entries = []
    for block, cols in _split_columns(form.P, form.structure):
        if block.kind is BlockKind.REAL and block.real < 0:
            negative.setdefault((block.real, block.size), []).append(cols)
        else:
            entries.append((block, cols))

    offending = [(alpha, size, len(group)) for (alpha, size), group in negative.items() if len(group) % 2]
    if offending:
        raise ParityViolation(offending)

    for (alpha, size), group in negative.items():
        for first, second in zip(group[0::2], group[1::2]):
            paired = np.empty((first.shape[0], 2 * size))
            paired[:, 0::2] = first
            paired[:, 1::2] = second
            spec = JordanBlockSpec(real=alpha, imag=0.0, size=size, kind=BlockKind.COMPLEX_PAIR)
            entries.append((spec, paired))
    # a column permutation: P J P^-1 is unchanged, and so is the residual
    structure, P = _sorted_blocks(entries, form.structure.dimension)
    return RealJordanForm(P=_freeze(P), structure=structure, residual=form.residual)


# ─────────────────────────────────────────────────────────────────────────────
# Jordan decompositions
# ─────────────────────────────────────────────────────────────────────────────

def additive_jordan_decomposition(A, tol: Optional[Tolerances] = None,
                                  seed: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
    """A = S + N with S semisimple, N nilpotent and SN = NS."""
    A = as_real_matrix(A)
    tol = tol or Tolerances()
    form = real_jordan_form(A, tol, seed)
    S = form.P @ jordan_matrix(form.structure, superdiagonal=False) @ inverse(form.P, tol)
    return S, A - S


def multiplicative_jordan_decomposition(A, tol: Optional[Tolerances] = None,
                                        seed: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
    """A = S U = U S with S semisimple and U unipotent; A must be invertible."""
    A = as_real_matrix(A)
    tol = tol or Tolerances()
    S, N = additive_jordan_decomposition(A, tol, seed)
    U = np.eye(A.shape[0]) + inverse(S, tol) @ N
    return S, U
