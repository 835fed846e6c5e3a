import numpy as np
import pytest
from hypothesis import given, settings as hsettings, strategies as hst
from hypothesis.extra.numpy import arrays

from app.logic.linalg_core import (
    as_real_matrix,
    cluster_eigenvalues,
    eigenvalues,
    inverse,
    is_singular,
    numerical_rank,
    operator_norm,
    poly_eval,
    relative_error,
    solve,
)
from app.models.errors import InvalidMatrix, NonConvergence, Singular
from app.models.pydantic.models import Tolerances

from conftest import block_diagonal_from_spectrum, random_similar, random_spectrum

finite = hst.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
square_4 = arrays(np.float64, (4, 4), elements=finite)


def spectrum_pairs(spectrum):
    return sorted((round(e.real, 9), round(e.imag, 9), e.algebraic_multiplicity) for e in spectrum)


class TestValidation:
    def test_rejects_non_square(self):
        with pytest.raises(InvalidMatrix):
            as_real_matrix([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])

    def test_rejects_nan(self):
        with pytest.raises(InvalidMatrix):
            as_real_matrix([[1.0, np.nan], [0.0, 1.0]])

    def test_rejects_empty(self):
        with pytest.raises(InvalidMatrix):
            as_real_matrix(np.zeros((0, 0)))

    def test_invalid_matrix_is_a_value_error(self):
        with pytest.raises(ValueError):
            as_real_matrix("not a matrix")


class TestEigenvalues:
    def test_diagonal(self):
        assert spectrum_pairs(eigenvalues(np.diag([2.0, 3.0]))) == [(2.0, 0.0, 1), (3.0, 0.0, 1)]

    def test_rotation_by_quarter_turn(self):
        spectrum = eigenvalues([[0.0, -1.0], [1.0, 0.0]])
        assert spectrum_pairs(spectrum) == [(0.0, -1.0, 1), (0.0, 1.0, 1)]
        # conjugates are exact mirror images
        assert spectrum[0].imag == -spectrum[1].imag

    def test_defective_block_is_one_cluster(self):
        spectrum = eigenvalues([[2.0, 1.0], [0.0, 2.0]])
        assert len(spectrum) == 1
        assert spectrum[0].algebraic_multiplicity == 2
        assert spectrum[0].real == pytest.approx(2.0, abs=1e-12)

    def test_defective_block_matches_characteristic_polynomial_roots(self):
        A = np.array([[3.0, 1.0], [-1.0, 1.0]])  # (X - 2)^2
        roots = np.roots(np.poly(A))
        spectrum = eigenvalues(A, Tolerances(cluster_tol=1e-6))
        assert len(spectrum) == 1
        assert spectrum[0].real == pytest.approx(float(np.mean(roots.real)), abs=1e-7)

    def test_multiplicities_sum_to_n(self, rng):
        A = rng.standard_normal((7, 7))
        assert sum(e.algebraic_multiplicity for e in eigenvalues(A)) == 7

    def test_explicit_cluster_tolerance_merges(self):
        spectrum = eigenvalues(np.diag([1.0, 1.001]), Tolerances(cluster_tol=0.01))
        assert [(e.real, e.algebraic_multiplicity) for e in spectrum] == [(pytest.approx(1.0005), 2)]

    def test_identical_members_keep_their_value(self):
        # a plain mean of identical values can drift by an ulp
        spectrum = cluster_eigenvalues(np.array([0.1, 0.1, 0.1]), 1e-8)
        assert spectrum[0].real == 0.1
        assert spectrum[0].algebraic_multiplicity == 3

    def test_scalar_matrix_is_exact(self):
        spectrum = eigenvalues(0.3 * np.eye(3))
        assert [(e.real, e.algebraic_multiplicity) for e in spectrum] == [(0.3, 3)]

    def test_similarity_invariance(self, rng):
        for _ in range(20):
            n = int(rng.integers(2, 9))
            A = random_similar(rng, block_diagonal_from_spectrum(random_spectrum(rng, n)))
            P = np.eye(n) + 0.2 * rng.standard_normal((n, n)) / np.sqrt(n)
            moved = eigenvalues(P @ A @ np.linalg.inv(P))
            original = eigenvalues(A)
            assert [e.algebraic_multiplicity for e in moved] == [e.algebraic_multiplicity for e in original]
            np.testing.assert_allclose([e.value for e in moved], [e.value for e in original], atol=1e-8)

    def test_determinant_is_eigenvalue_product(self, rng):
        for n in range(2, 9):
            A = np.eye(n) + 0.3 * rng.standard_normal((n, n))
            product = np.prod([e.value ** e.algebraic_multiplicity for e in eigenvalues(A)])
            det = np.linalg.det(A)
            assert abs(product.imag) <= 1e-8 * abs(det)
            assert product.real == pytest.approx(det, rel=1e-8)

    def test_unmirrored_cluster_is_rejected(self):
        values = np.array([1 + 1j, 1 - 1j, 1 - 1.05j])
        with pytest.raises(NonConvergence):
            cluster_eigenvalues(values, 0.1)


class TestLinearSolve:
    def test_inverse_identity(self):
        np.testing.assert_array_equal(inverse(np.eye(3)), np.eye(3))

    def test_inverse_diagonal(self):
        np.testing.assert_allclose(inverse(np.diag([2.0, 4.0])), np.diag([0.5, 0.25]), atol=1e-15)

    def test_inverse_residual(self, rng):
        A = np.eye(5) + 0.3 * rng.standard_normal((5, 5))
        assert operator_norm(A @ inverse(A) - np.eye(5)) < 1e-12

    def test_two_sided_inverse(self, rng):
        A = np.eye(5) + 0.3 * rng.standard_normal((5, 5))
        A_inv = inverse(A)
        assert operator_norm(A_inv @ A - np.eye(5)) < 1e-12
        assert operator_norm(A @ A_inv - np.eye(5)) < 1e-12

    def test_singular(self):
        with pytest.raises(Singular):
            inverse([[1.0, 2.0], [2.0, 4.0]])

    def test_singular_exit_code(self):
        assert Singular.exit_code == 2

    def test_solve_matches_numpy(self, rng):
        A = np.eye(4) + 0.5 * rng.standard_normal((4, 4))
        B = rng.standard_normal((4, 2))
        np.testing.assert_allclose(solve(A, B), np.linalg.solve(A, B), rtol=1e-10, atol=1e-12)

    def test_complex_solve(self):
        A = np.array([[1.0, 1j], [-1j, 2.0]])
        b = np.array([1.0, 0.0])
        np.testing.assert_allclose(A @ solve(A, b), b, atol=1e-14)


class TestRank:
    def test_full_rank(self):
        assert numerical_rank(np.eye(3), 1e-12) == 3

    def test_rank_one(self):
        v = np.array([1.0, 2.0, 3.0])
        assert numerical_rank(np.outer(v, v), 1e-10) == 1

    def test_zero_matrix(self):
        assert numerical_rank(np.zeros((3, 3)), 0.0) == 0

    def test_nilpotent_shift(self):
        assert numerical_rank(np.eye(4, k=1), 1e-12) == 3


class TestNorms:
    def test_identity(self):
        assert operator_norm(np.eye(3)) == 1.0

    def test_column_sum(self):
        assert operator_norm([[1.0, -2.0], [3.0, 4.0]]) == 6.0

    @given(A=square_4, B=square_4)
    def test_submultiplicative(self, A, B):
        assert operator_norm(A @ B) <= operator_norm(A) * operator_norm(B) * (1 + 1e-12) + 1e-300

    def test_relative_error_of_zero_target_is_absolute(self):
        assert relative_error(np.eye(2), np.zeros((2, 2))) == 1.0


class TestPolyEval:
    def test_cubic(self, rng):
        A = rng.standard_normal((3, 3))
        expected = A @ A @ A - 2 * A @ A + 3 * A - np.eye(3)
        np.testing.assert_allclose(poly_eval([1, -2, 3, -1], A), expected, atol=1e-12)

    def test_constant(self, rng):
        np.testing.assert_array_equal(poly_eval([1.0], rng.standard_normal((3, 3))), np.eye(3))

    def test_cayley_hamilton(self, rng):
        A = rng.standard_normal((4, 4))
        residual = poly_eval(np.poly(A), A)
        assert np.max(np.abs(residual)) <= 1e-10 * max(operator_norm(A), 1.0) ** 4

    @hsettings(max_examples=50)
    @given(A=arrays(np.float64, (3, 3), elements=hst.floats(-3, 3)),
           c=hst.lists(hst.floats(-3, 3), min_size=1, max_size=4))
    def test_linear_in_coefficients(self, A, c):
        doubled = poly_eval([2 * x for x in c], A)
        np.testing.assert_allclose(doubled, 2 * poly_eval(c, A), rtol=1e-12, atol=1e-9)


class TestSingularity:
    def test_tiny_eigenvalue_is_not_zero(self):
        A = np.diag([1e-9, 1.0])
        assert not is_singular(A, [1e-9, 1.0], Tolerances())

    def test_eigenvalue_below_rank_threshold(self):
        A = np.diag([1e-20, 1.0])
        assert is_singular(A, [1e-20, 1.0], Tolerances())

    def test_rank_deficient_nilpotent(self):
        assert is_singular(np.eye(2, k=1), [0.0], Tolerances())

    def test_explicit_rank_tolerance(self):
        assert is_singular(np.diag([1e-9, 1.0]), [1e-9, 1.0], Tolerances(rank_tol=1e-6))
