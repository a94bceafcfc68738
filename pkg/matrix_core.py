"""Moduł podstawowej arytmetyki macierzowej.

Zawiera operacje, na których opiera się cała reszta projektu:
- Walidację i symetryzację macierzy hermitowskich (kowariancje R, laplasjany).
- Komutator [A, B] i podwójny komutator [R, [R, B]] = R²B − 2RBR + BR².
- Geometrię Frobeniusa (iloczyn skalarny ⟨A, B⟩ = Tr(A*B), norma).
- Rozkład własny macierzy hermitowskiej i funkcje macierzowe
  (e^{−βH}, (I + H)^{−1}).
- Uogólniony problem własny Mc = λGc rozwiązywany redukcją Cholesky'ego.
- Pojemność strukturalną κ(R).

Macierze są zwykłymi tablicami `numpy.ndarray` (rzeczywistymi lub
zespolonymi); funkcje są czyste i nie modyfikują argumentów.
"""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike, NDArray

from config import HERMITIAN_TOL, PSD_TOL, ZERO_TOL
from errors import DependentBasisError, NumericalError, ValidationError

logger = logging.getLogger(__name__)

# Typy opisowe: obie to tablice numpy, różnią się gwarancjami
ComplexMatrix = NDArray
HermitianMatrix = NDArray


@dataclass(frozen=True)
class EigenDecomposition:
    """Rozkład H = V·diag(λ)·V* z wartościami własnymi rosnąco."""

    eigenvalues: NDArray
    eigenvectors: NDArray

    def reconstruct(self):
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


@dataclass(frozen=True)
class GeneralizedEigen:
    """Pełne rozwiązanie Mc = λGc; kolumny `eigenvectors` są G-ortonormalne."""

    eigenvalues: NDArray
    eigenvectors: NDArray


# =============================================================================
# WALIDACJA
# =============================================================================
def as_square(a: ArrayLike, name: str = "macierz") -> ComplexMatrix:
    """Zamienia wejście na kwadratową, skończoną tablicę numpy.

    Raises:
        ValidationError: Gdy wejście nie jest kwadratowe, jest puste
            lub zawiera NaN/inf.
    """
    arr = np.asarray(a)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise ValidationError(f"{name}: oczekiwano macierzy kwadratowej, otrzymano kształt {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name}: macierz zawiera wartości nieskończone lub NaN")
    if not np.iscomplexobj(arr):
        arr = arr.astype(float)
    return arr


def as_hermitian(h: ArrayLike, name: str = "macierz") -> HermitianMatrix:
    """Waliduje hermitowskość i zwraca symetryzowaną kopię (H + H*)/2.

    Wejście rzeczywiste pozostaje rzeczywiste. Szum zaokrągleń (np. po
    zapisie do pliku) mieszczący się w tolerancji jest akceptowany.

    Args:
        h: Macierz kwadratowa.
        name (str): Nazwa używana w komunikatach błędów.

    Returns:
        np.ndarray: Macierz dokładnie hermitowska.

    Raises:
        ValidationError: Gdy ‖H − H*‖_F > HERMITIAN_TOL · max(1, ‖H‖_F).
    """
    arr = as_square(h, name)
    skew = np.linalg.norm(arr - arr.conj().T)
    if skew > HERMITIAN_TOL * max(1.0, np.linalg.norm(arr)):
        raise ValidationError(f"{name}: macierz nie jest hermitowska (‖H − H*‖_F = {skew:.3e})")
    return (arr + arr.conj().T) / 2


def _check_same_shape(a, b):
    if a.shape != b.shape:
        raise ValidationError(f"Niezgodne wymiary: {a.shape} i {b.shape}")


# =============================================================================
# KOMUTATORY I GEOMETRIA FROBENIUSA
# =============================================================================
def commutator(a: ArrayLike, b: ArrayLike) -> ComplexMatrix:
    """Zwraca [A, B] = AB − BA."""
    a = as_square(a, "a")
    b = as_square(b, "b")
    _check_same_shape(a, b)
    return a @ b - b @ a


def double_commutator(r: ArrayLike, b: ArrayLike, r2: NDArray | None = None) -> ComplexMatrix:
    """Zwraca [R, [R, B]] w postaci rozwiniętej R²B − 2RBR + BR².

    Args:
        r: Macierz hermitowska R.
        b: Dowolna macierz B tego samego wymiaru.
        r2: Opcjonalnie wcześniej policzone R² (pętla asemblacji liczy je raz).

    Returns:
        np.ndarray: Podwójny komutator.
    """
    r = as_square(r, "r")
    b = as_square(b, "b")
    _check_same_shape(r, b)
    if r2 is None:
        r2 = r @ r
    return r2 @ b - 2 * (r @ b @ r) + b @ r2


def frobenius_inner(a: ArrayLike, b: ArrayLike) -> complex:
    """Iloczyn Frobeniusa ⟨A, B⟩ = Tr(A*B); pierwszy argument jest sprzęgany."""
    a = np.asarray(a)
    b = np.asarray(b)
    _check_same_shape(a, b)
    return complex(np.vdot(a, b))


def frobenius_norm(a: ArrayLike) -> float:
    return float(np.linalg.norm(np.asarray(a)))


# =============================================================================
# ROZKŁAD WŁASNY I FUNKCJE MACIERZOWE
# =============================================================================
def hermitian_eig(h: ArrayLike) -> EigenDecomposition:
    """Rozkład własny macierzy hermitowskiej.

    Args:
        h: Macierz hermitowska (w granicach tolerancji).

    Returns:
        EigenDecomposition: Wartości własne rosnąco i unitarne wektory własne.

    Raises:
        NumericalError: Gdy solver LAPACK nie osiągnie zbieżności.
    """
    h = as_hermitian(h, "h")
    try:
        w, v = scipy.linalg.eigh(h)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as err:
        raise NumericalError(f"Rozkład własny nie osiągnął zbieżności: {err}") from err
    return EigenDecomposition(eigenvalues=w, eigenvectors=v)


def matrix_exp_neg(h: ArrayLike, beta: float) -> HermitianMatrix:
    """Zwraca e^{−βH} = V·exp(−βΛ)·V*.

    Raises:
        ValidationError: Gdy β < 0.
    """
    if beta < 0 or not np.isfinite(beta):
        raise ValidationError(f"β musi być skończone i nieujemne, otrzymano {beta}")
    eig = hermitian_eig(h)
    v = eig.eigenvectors
    out = (v * np.exp(-beta * eig.eigenvalues)) @ v.conj().T
    return (out + out.conj().T) / 2


def shifted_inverse(h: ArrayLike) -> HermitianMatrix:
    """Zwraca (I + H)^{−1} przez rozkład własny.

    Raises:
        NumericalError: Gdy I + H jest osobliwa (lub nie jest dodatnio określona).
    """
    eig = hermitian_eig(h)
    shifted = 1.0 + eig.eigenvalues
    scale = max(1.0, float(np.max(np.abs(shifted))))
    if shifted.min() <= ZERO_TOL * scale:
        raise NumericalError(f"I + h jest osobliwa (najmniejsza wartość własna {shifted.min():.3e})")
    v = eig.eigenvectors
    out = (v / shifted) @ v.conj().T
    return (out + out.conj().T) / 2


def structural_capacity(r: ArrayLike) -> float:
    """Pojemność strukturalna κ(R) = 1 + ‖R‖₁² / Tr(R²).

    ‖R‖₁ jest normą śladową (suma modułów wartości własnych), która dla
    macierzy PSD równa się śladowi.

    Raises:
        ValidationError: Dla macierzy zerowej.
    """
    r = as_hermitian(r, "r")
    fro2 = float(np.linalg.norm(r) ** 2)
    if fro2 == 0.0:
        raise ValidationError("κ(R) nie jest zdefiniowana dla macierzy zerowej")
    trace_norm = float(np.sum(np.abs(scipy.linalg.eigvalsh(r))))
    return 1.0 + trace_norm ** 2 / fro2


# =============================================================================
# UOGÓLNIONY PROBLEM WŁASNY
# =============================================================================
def gevp_full(m: ArrayLike, g: ArrayLike) -> GeneralizedEigen:
    """Rozwiązuje Mc = λGc redukcją Cholesky'ego G = LL*.

    Macierz C = L⁻¹ M L⁻* jest diagonalizowana standardowym solverem
    hermitowskim, a wektory odzyskiwane jako c = L⁻* y, więc c*Gc = 1.
    Ujemne wartości własne w granicach tolerancji są obcinane do zera.

    Args:
        m: Macierz hermitowska dodatnio półokreślona (d×d).
        g: Macierz Grama, dodatnio określona (d×d).

    Returns:
        GeneralizedEigen: Wszystkie wartości własne rosnąco i G-ortonormalne
        wektory własne w kolumnach.

    Raises:
        ValidationError: Niezgodne wymiary.
        DependentBasisError: G nie jest dodatnio określona.
        NumericalError: M jest istotnie nieokreślona.
    """
    m = as_hermitian(m, "m")
    g = as_hermitian(g, "g")
    _check_same_shape(m, g)

    m_norm = np.linalg.norm(m)
    m_min = float(scipy.linalg.eigvalsh(m)[0])
    if m_min < -PSD_TOL * m_norm:
        raise NumericalError(
            f"Macierz m jest istotnie nieokreślona (λ_min(m) = {m_min:.3e}, ‖m‖_F = {m_norm:.3e})"
        )

    try:
        chol = scipy.linalg.cholesky(g, lower=True)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as err:
        w, v = scipy.linalg.eigh(g)
        raise DependentBasisError(
            f"Macierz Grama nie jest dodatnio określona (λ_min(G) = {w[0]:.3e}); baza jest liniowo zależna",
            null_vector=v[:, 0],
        ) from err

    x = scipy.linalg.solve_triangular(chol, m, lower=True)
    c_mat = scipy.linalg.solve_triangular(chol, x.conj().T, lower=True)
    c_mat = (c_mat + c_mat.conj().T) / 2

    try:
        w, y = scipy.linalg.eigh(c_mat)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as err:
        raise NumericalError(f"Rozkład własny zredukowanego problemu nie powiódł się: {err}") from err

    vectors = scipy.linalg.solve_triangular(chol, y, lower=True, trans='C')

    if w[0] < 0:
        logger.debug("Obcinam ujemne wartości własne do zera (min %.3e)", w[0])
    w = np.maximum(w, 0.0)
    return GeneralizedEigen(eigenvalues=w, eigenvectors=vectors)


def gevp_min(m: ArrayLike, g: ArrayLike):
    """Minimalna para własna problemu Mc = λGc.

    Args:
        m: Macierz hermitowska PSD.
        g: Macierz hermitowska dodatnio określona.

    Returns:
        tuple: (λ_min, c, spectrum), gdzie c*Gc = 1, a spectrum to wszystkie
        wartości własne rosnąco.
    """
    sol = gevp_full(m, g)
    return float(sol.eigenvalues[0]), sol.eigenvectors[:, 0], sol.eigenvalues
