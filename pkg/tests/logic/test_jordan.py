import numpy as np
import pytest

from app.logic.jordan import (
    additive_jordan_decomposition,
    jordan_chains,
    jordan_matrix,
    jordan_structure,
    multiplicative_jordan_decomposition,
    pair_negative_blocks,
    real_jordan_form,
)
from app.models.errors import ParityViolation, Singular
from app.models.pydantic.models import BlockKind, JordanBlockSpec, JordanStructure, Tolerances


def sizes_by_eigenvalue(structure, digits=9):
    grouped = {}
    for block in structure.blocks:
        key = (round(block.real, digits), round(block.imag, digits))
        grouped.setdefault(key, []).append(block.size)
    return {key: sorted(sizes, reverse=True) for key, sizes in grouped.items()}


def jordan(lam, size):
    return lam * np.eye(size) + np.eye(size, k=1)


def direct_sum(*blocks):
    n = sum(b.shape[0] for b in blocks)
    M = np.zeros((n, n))
    pos = 0
    for b in blocks:
        M[pos:pos + b.shape[0], pos:pos + b.shape[0]] = b
        pos += b.shape[0]
    return M


class TestJordanStructure:
    def test_diagonal(self):
        assert sizes_by_eigenvalue(jordan_structure(np.diag([2.0, 3.0]))) == {(2.0, 0.0): [1], (3.0, 0.0): [1]}

    def test_rotation(self):
        assert sizes_by_eigenvalue(jordan_structure([[0.0, -1.0], [1.0, 0.0]])) == {
            (0.0, 1.0): [1], (0.0, -1.0): [1]}

    def test_single_defective_block(self):
        structure = jordan_structure([[2.0, 1.0], [0.0, 2.0]])
        assert sizes_by_eigenvalue(structure) == {(2.0, 0.0): [2]}
        assert not structure.is_semisimple

    def test_identity(self):
        structure = jordan_structure(np.eye(3))
        assert [(b.real, b.size) for b in structure.blocks] == [(1.0, 1)] * 3
        assert structure.is_semisimple

    def test_four_block_example(self):
        A = direct_sum(jordan(2.0, 3), jordan(2.0, 2), jordan(2.0, 1), jordan(-1.0, 2))
        assert sizes_by_eigenvalue(jordan_structure(A)) == {(2.0, 0.0): [3, 2, 1], (-1.0, 0.0): [2]}

    def test_blocks_sorted_longest_first(self):
        A = direct_sum(jordan(2.0, 1), jordan(2.0, 3))
        assert [b.size for b in jordan_structure(A).blocks] == [3, 1]

    def test_counts(self):
        A = direct_sum(jordan(-1.0, 2), jordan(-1.0, 2), jordan(3.0, 1))
        counts = [(c.real, c.size, c.count) for c in jordan_structure(A).counts()]
        assert counts == [(-1.0, 2, 2), (3.0, 1, 1)]


class TestJordanMatrix:
    def test_rebuilds_complex_block(self):
        structure = JordanStructure(blocks=[JordanBlockSpec(real=1.0, imag=2.0, size=2)], dimension=2)
        J = jordan_matrix(structure)
        np.testing.assert_array_equal(J, [[1 + 2j, 1], [0, 1 + 2j]])

    def test_real_pair_block(self):
        spec = JordanBlockSpec(real=1.0, imag=2.0, size=2, kind=BlockKind.COMPLEX_PAIR)
        J = jordan_matrix(JordanStructure(blocks=[spec], dimension=4))
        expected = np.array([[1, -2, 1, 0], [2, 1, 0, 1], [0, 0, 1, -2], [0, 0, 2, 1]], dtype=float)
        np.testing.assert_array_equal(J, expected)

    def test_semisimple_part(self):
        spec = JordanBlockSpec(real=5.0, size=3, kind=BlockKind.REAL)
        S = jordan_matrix(JordanStructure(blocks=[spec], dimension=3), superdiagonal=False)
        np.testing.assert_array_equal(S, 5 * np.eye(3))

    def test_pair_needs_negative_or_complex_eigenvalue(self):
        with pytest.raises(ValueError):
            JordanBlockSpec(real=1.0, imag=0.0, size=1, kind=BlockKind.COMPLEX_PAIR)


class TestJordanChains:
    def test_single_block_accepts_any_residual_passing_p(self):
        A = jordan(5.0, 3)
        form = jordan_chains(A, jordan_structure(A))
        assert form.residual <= 1e-10

    def test_diagonalizable(self, rng):
        Q = np.eye(2) + 0.3 * rng.standard_normal((2, 2))
        A = Q @ np.diag([1.0, 2.0]) @ np.linalg.inv(Q)
        assert jordan_chains(A, jordan_structure(A)).residual <= 1e-10

    def test_defective_chain(self):
        A = np.array([[2.0, 1.0], [0.0, 2.0]])
        form = jordan_chains(A, jordan_structure(A))
        P = form.P
        np.testing.assert_allclose(np.linalg.inv(P) @ A @ P, jordan(2.0, 2), atol=1e-12)
        # (A - 2I) u = e1 up to the chain's scaling
        np.testing.assert_allclose((A - 2 * np.eye(2)) @ P[:, 1], P[:, 0], atol=1e-12)

    def test_p_is_read_only(self):
        A = np.diag([1.0, 2.0])
        form = jordan_chains(A, jordan_structure(A))
        with pytest.raises(ValueError):
            form.P[0, 0] = 3.0


class TestRealJordanForm:
    def test_rotation_is_one_pair_block(self):
        form = real_jordan_form([[0.0, -1.0], [1.0, 0.0]])
        assert len(form.structure.blocks) == 1
        block = form.structure.blocks[0]
        assert block.kind is BlockKind.COMPLEX_PAIR
        assert (block.real, block.imag) == pytest.approx((0.0, 1.0), abs=1e-12)
        assert form.residual <= 1e-12
        assert np.isrealobj(form.P)

    def test_companion_matrix(self):
        A = np.array([[0.0, -5.0], [1.0, 2.0]])  # X^2 - 2X + 5
        form = real_jordan_form(A)
        block = form.structure.blocks[0]
        assert (block.real, block.imag) == pytest.approx((1.0, 2.0), abs=1e-12)
        J = jordan_matrix(form.structure)
        np.testing.assert_allclose(form.P @ J @ np.linalg.inv(form.P), A, atol=1e-12)

    def test_real_blocks(self):
        form = real_jordan_form(np.diag([3.0, -1.0]))
        assert [(b.real, b.size, b.kind) for b in form.structure.blocks] == [
            (-1.0, 1, BlockKind.REAL), (3.0, 1, BlockKind.REAL)]

    def test_defective_complex_pair(self, rng):
        L = np.array([[1.0, -2.0], [2.0, 1.0]])
        J = np.block([[L, np.eye(2)], [np.zeros((2, 2)), L]])
        Q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
        A = Q @ J @ Q.T
        form = real_jordan_form(A, Tolerances(cluster_tol=1e-6, rank_tol=1e-9))
        assert [(b.size, b.kind) for b in form.structure.blocks] == [(2, BlockKind.COMPLEX_PAIR)]
        np.testing.assert_allclose(form.P @ jordan_matrix(form.structure) @ np.linalg.inv(form.P), A, atol=1e-10)


class TestPairNegativeBlocks:
    def test_even_count_is_paired(self):
        form = pair_negative_blocks(real_jordan_form(np.diag([-1.0, -1.0])))
        assert len(form.structure.blocks) == 1
        block = form.structure.blocks[0]
        assert (block.real, block.imag, block.size, block.kind) == (-1.0, 0.0, 1, BlockKind.COMPLEX_PAIR)
        np.testing.assert_allclose(form.P @ jordan_matrix(form.structure) @ np.linalg.inv(form.P),
                                   -np.eye(2), atol=1e-14)

    def test_odd_count_names_offending_block(self):
        with pytest.raises(ParityViolation) as excinfo:
            pair_negative_blocks(real_jordan_form([[-1.0, 1.0], [0.0, -1.0]]))
        assert excinfo.value.offending == [(-1.0, 2, 1)]
        assert "(-1, size 2, count 1)" in str(excinfo.value)

    def test_no_negative_eigenvalues_unchanged(self):
        form = real_jordan_form(np.diag([1.0, 2.0]))
        paired = pair_negative_blocks(form)
        assert paired.structure == form.structure
        np.testing.assert_array_equal(paired.P, form.P)

    def test_paired_defective_blocks(self):
        A = direct_sum(jordan(-2.0, 2), jordan(-2.0, 2))
        form = pair_negative_blocks(real_jordan_form(A))
        assert [(b.real, b.size, b.kind) for b in form.structure.blocks] == [(-2.0, 2, BlockKind.COMPLEX_PAIR)]
        np.testing.assert_allclose(form.P @ jordan_matrix(form.structure) @ np.linalg.inv(form.P), A, atol=1e-12)


class TestJordanDecompositions:
    def test_additive_single_block(self):
        S, N = additive_jordan_decomposition([[2.0, 1.0], [0.0, 2.0]])
        np.testing.assert_allclose(S, 2 * np.eye(2), atol=1e-12)
        np.testing.assert_allclose(N, [[0.0, 1.0], [0.0, 0.0]], atol=1e-12)

    def test_additive_semisimple(self, rng):
        Q = np.eye(3) + 0.2 * rng.standard_normal((3, 3))
        A = Q @ np.diag([1.0, 2.0, 4.0]) @ np.linalg.inv(Q)
        S, N = additive_jordan_decomposition(A)
        np.testing.assert_allclose(N, 0, atol=1e-10)

    def test_additive_j3(self):
        S, N = additive_jordan_decomposition(jordan(5.0, 3))
        np.testing.assert_allclose(S, 5 * np.eye(3), atol=1e-12)
        np.testing.assert_allclose(N, np.eye(3, k=1), atol=1e-12)
        np.testing.assert_allclose(S @ N, N @ S, atol=1e-12)

    def test_multiplicative_single_block(self):
        S, U = multiplicative_jordan_decomposition([[2.0, 1.0], [0.0, 2.0]])
        np.testing.assert_allclose(S, 2 * np.eye(2), atol=1e-12)
        np.testing.assert_allclose(U, [[1.0, 0.5], [0.0, 1.0]], atol=1e-12)
        np.testing.assert_allclose(S @ U, U @ S, atol=1e-12)

    def test_multiplicative_unipotent(self):
        A = np.array([[1.0, 1.0], [0.0, 1.0]])
        S, U = multiplicative_jordan_decomposition(A)
        np.testing.assert_allclose(S, np.eye(2), atol=1e-12)
        np.testing.assert_allclose(U, A, atol=1e-12)

    def test_multiplicative_semisimple(self):
        S, U = multiplicative_jordan_decomposition(np.diag([2.0, 3.0]))
        np.testing.assert_allclose(U, np.eye(2), atol=1e-12)

    def test_multiplicative_needs_invertible(self):
        with pytest.raises(Singular):
            multiplicative_jordan_decomposition([[0.0, 1.0], [0.0, 0.0]])

    def test_semisimple_part_does_not_depend_on_chains(self, rng):
        A = direct_sum(jordan(2.0, 2), jordan(-1.0, 1), jordan(2.0, 1))
        Q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
        A = Q @ A @ Q.T
        tol = Tolerances(cluster_tol=1e-6, rank_tol=1e-9)
        S_plain, _ = additive_jordan_decomposition(A, tol)
        S_seeded, _ = additive_jordan_decomposition(A, tol, seed=3)
        np.testing.assert_allclose(S_seeded, S_plain, atol=1e-9)
