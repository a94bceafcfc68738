import numpy as np
import pytest

from errors import DependentBasisError, NumericalError, ValidationError
from matrix_core import (
    as_hermitian,
    as_square,
    commutator,
    double_commutator,
    frobenius_inner,
    frobenius_norm,
    gevp_full,
    gevp_min,
    hermitian_eig,
    matrix_exp_neg,
    shifted_inverse,
    structural_capacity,
)


def test_as_square_reports_shape():
    with pytest.raises(ValidationError, match=r"\(2, 3\)"):
        as_square(np.zeros((2, 3)))


def test_as_square_rejects_nan():
    a = np.eye(2)
    a[0, 1] = np.nan
    with pytest.raises(ValidationError):
        as_square(a)


def test_as_hermitian_symmetrizes_within_tolerance():
    h = np.array([[1.0, 2.0], [2.0 + 1e-13, 3.0]])
    out = as_hermitian(h)
    assert np.array_equal(out, out.T)


def test_as_hermitian_rejects_skew():
    with pytest.raises(ValidationError, match="hermitowska"):
        as_hermitian(np.array([[0.0, 1.0], [-1.0, 0.0]]))


def test_commutator_of_commuting_matrices_is_zero():
    a = np.diag([1.0, 2.0, 3.0])
    assert np.allclose(commutator(a, a @ a), 0)


def test_commutator_shape_mismatch():
    with pytest.raises(ValidationError):
        commutator(np.eye(2), np.eye(3))


def test_double_commutator_matches_nested_form(rng, make_hermitian):
    r = make_hermitian(5, rng)
    b = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    nested = commutator(r, commutator(r, b))
    assert np.allclose(double_commutator(r, b), nested)
    assert np.allclose(double_commutator(r, b, r2=r @ r), nested)


def test_quadratic_form_equals_commutator_norm(rng, make_hermitian):
    for _ in range(200):
        m = int(rng.integers(2, 11))
        r = make_hermitian(m, rng)
        r /= np.linalg.norm(r)
        b = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
        b /= np.linalg.norm(b)
        form = frobenius_inner(b, double_commutator(r, b))
        target = frobenius_norm(commutator(r, b)) ** 2
        assert abs(form.real - target) <= 1e-10 * (1 + target)
        assert abs(form.imag) <= 1e-12


def test_frobenius_inner_conjugates_first_argument():
    a = np.array([[1j]])
    b = np.array([[1.0]])
    assert frobenius_inner(a, b) == pytest.approx(-1j)


def test_hermitian_eig_reconstructs(rng, make_hermitian):
    h = make_hermitian(6, rng)
    eig = hermitian_eig(h)
    assert np.all(np.diff(eig.eigenvalues) >= 0)
    assert np.allclose(eig.reconstruct(), h)


def test_hermitian_eig_vectors_are_unitary(rng, make_hermitian, make_symmetric):
    for m, h in ((5, make_hermitian(5, rng)), (12, make_symmetric(12, rng))):
        v = hermitian_eig(h).eigenvectors
        assert np.linalg.norm(v.conj().T @ v - np.eye(m)) <= 1e-10 * np.sqrt(m)


def test_matrix_exp_neg_of_zero_is_identity():
    assert np.allclose(matrix_exp_neg(np.zeros((3, 3)), 2.0), np.eye(3))


def test_matrix_exp_neg_rejects_negative_beta():
    with pytest.raises(ValidationError):
        matrix_exp_neg(np.eye(2), -1.0)


def _cycle_laplacian(m):
    shift = np.roll(np.eye(m), 1, axis=1)
    return 2 * np.eye(m) - shift - shift.T


def test_matrix_exp_neg_semigroup():
    lap = _cycle_laplacian(6)
    joint = matrix_exp_neg(lap, 0.3 + 0.45)
    product = matrix_exp_neg(lap, 0.3) @ matrix_exp_neg(lap, 0.45)
    assert np.max(np.abs(joint - product)) <= 1e-9


def test_matrix_exp_neg_matches_taylor_series_on_c4():
    lap = _cycle_laplacian(4)
    beta = 0.7
    term = np.eye(4)
    series = np.eye(4)
    for k in range(1, 20):
        term = term @ (-beta * lap) / k
        series = series + term
    assert np.max(np.abs(matrix_exp_neg(lap, beta) - series)) <= 1e-9


def test_shifted_inverse(rng, make_symmetric):
    a = make_symmetric(4, rng)
    h = a @ a.T
    assert np.allclose(shifted_inverse(h) @ (np.eye(4) + h), np.eye(4))


def test_shifted_inverse_singular():
    with pytest.raises(NumericalError):
        shifted_inverse(-np.eye(3))


def test_structural_capacity_of_identity():
    # ‖I‖₁ = M, Tr(I²) = M
    assert structural_capacity(np.eye(5)) == pytest.approx(6.0)


def test_structural_capacity_of_rank_one():
    v = np.ones((4, 1))
    assert structural_capacity(v @ v.T) == pytest.approx(2.0)


def test_structural_capacity_zero_matrix():
    with pytest.raises(ValidationError):
        structural_capacity(np.zeros((3, 3)))


def test_gevp_diagonal():
    sol = gevp_full(np.diag([2.0, 1.0]), np.eye(2))
    assert np.allclose(sol.eigenvalues, [1.0, 2.0])


def test_gevp_vectors_are_g_orthonormal(rng, make_hermitian):
    a = make_hermitian(5, rng)
    m = a @ a.conj().T
    b = make_hermitian(5, rng)
    g = b @ b.conj().T + 5 * np.eye(5)
    sol = gevp_full(m, g)
    v = sol.eigenvectors
    assert np.allclose(v.conj().T @ g @ v, np.eye(5), atol=1e-10)
    assert np.allclose(m @ v, g @ v * sol.eigenvalues, atol=1e-9)


def test_gevp_min_returns_smallest():
    lam, c, spectrum = gevp_min(np.diag([3.0, 1.0, 2.0]), np.eye(3))
    assert lam == pytest.approx(1.0)
    assert abs(c[1]) == pytest.approx(1.0)
    assert np.allclose(spectrum, [1.0, 2.0, 3.0])


def test_gevp_dependent_gram_carries_null_vector():
    g = np.array([[1.0, 1.0], [1.0, 1.0]])
    with pytest.raises(DependentBasisError) as excinfo:
        gevp_full(np.eye(2), g)
    null = excinfo.value.null_vector
    assert np.allclose(g @ null, 0, atol=1e-12)


def test_gevp_rejects_indefinite_m():
    with pytest.raises(NumericalError):
        gevp_full(np.diag([1.0, -1.0]), np.eye(2))


def test_gevp_clamps_tiny_negative():
    sol = gevp_full(np.diag([-1e-14, 1.0]), np.eye(2))
    assert sol.eigenvalues[0] == 0.0
