"""Moduł katalogu baz generatorów.

Ten moduł buduje bazy kandydatów na generatory A = Σ c_k B_k:
- katalog standardowy pięciu permutacji (przesunięcie cykliczne, odbicie,
  transpozycja, zamiana połówek, 3-cykl),
- bazę różnic permutacji P_σ − I (przykład C6),
- jednoparametrową rodzinę chirp U(ψ)·P·U(ψ)*,
- bazy użytkownika wczytane z plików,
oraz macierz Grama G_ij = Tr(B_i* B_j).

Elementy są przechowywane gęsto; podpowiedź struktury (`hints`) pozwala
asemblacji w `dc_gevp` zastąpić mnożenia macierzy permutacjami wierszy
i kolumn R.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from numpy.typing import NDArray

from errors import DependentBasisError, ValidationError
from perm_group import Permutation, perm_matrix

logger = logging.getLogger(__name__)

HINT_PERMUTATION = "permutation"
HINT_PERM_DIFF = "perm-difference"
HINT_DENSE = "dense"
HINTS = (HINT_PERMUTATION, HINT_PERM_DIFF, HINT_DENSE)


@dataclass(frozen=True)
class GeneratorBasis:
    """Uporządkowana lista d macierzy M×M z etykietami i podpowiedziami struktury.

    Attributes:
        dim (int): Wymiar M.
        elements (tuple[np.ndarray, ...]): Macierze B_1..B_d.
        labels (tuple[str, ...]): Czytelne nazwy elementów.
        hints (tuple[str, ...]): "permutation", "perm-difference" lub "dense".
        perms (tuple[Permutation | None, ...]): σ dla elementów P_σ i P_σ − I.
    """

    dim: int
    elements: tuple
    labels: tuple
    hints: tuple
    perms: tuple

    def __post_init__(self):
        n = len(self.elements)
        if not (len(self.labels) == len(self.hints) == len(self.perms) == n):
            raise ValidationError("Niespójne długości elementów, etykiet i podpowiedzi bazy")
        for label, e, hint in zip(self.labels, self.elements, self.hints):
            if np.shape(e) != (self.dim, self.dim):
                raise ValidationError(f"Element '{label}' ma kształt {np.shape(e)}, oczekiwano {self.dim}×{self.dim}")
            if hint not in HINTS:
                raise ValidationError(f"Nieznana podpowiedź struktury: {hint}")

    @property
    def d(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def is_permutation_structured(self) -> bool:
        return self.d > 0 and all(h in (HINT_PERMUTATION, HINT_PERM_DIFF) for h in self.hints)

    def combine(self, coefficients) -> NDArray:
        """Zwraca A = Σ c_k B_k."""
        c = np.asarray(coefficients)
        if c.shape != (self.d,):
            raise ValidationError(f"Oczekiwano {self.d} współczynników, otrzymano {c.shape}")
        stacked = np.stack(self.elements)
        return np.tensordot(c, stacked, axes=1)

    def subset(self, indices) -> GeneratorBasis:
        idx = list(indices)
        return GeneratorBasis(
            self.dim,
            tuple(self.elements[i] for i in idx),
            tuple(self.labels[i] for i in idx),
            tuple(self.hints[i] for i in idx),
            tuple(self.perms[i] for i in idx),
        )


# =============================================================================
# PODSTAWOWE PERMUTACJE
# =============================================================================
def shift_permutation(m: int) -> Permutation:
    return Permutation(tuple((i + 1) % m for i in range(m)))


def reflection_permutation(m: int) -> Permutation:
    return Permutation(tuple(m - 1 - i for i in range(m)))


def block_swap_permutation(m: int) -> Permutation:
    half = m // 2
    return Permutation(tuple((i + half) % m for i in range(m)))


def cyclic_shift(m: int) -> NDArray:
    """Macierz permutacji M-cyklu 0 → 1 → … → M−1 → 0."""
    if m < 1:
        raise ValidationError(f"M musi być ≥ 1, otrzymano {m}")
    return perm_matrix(shift_permutation(m))


def reflection(m: int) -> NDArray:
    """Antyidentyczność J (jedynki na antyprzekątnej)."""
    if m < 1:
        raise ValidationError(f"M musi być ≥ 1, otrzymano {m}")
    return perm_matrix(reflection_permutation(m))


# =============================================================================
# KATALOGI
# =============================================================================
def _permutation_basis(m, named_perms) -> GeneratorBasis:
    elements, labels, perms = [], [], []
    for label, sigma in named_perms:
        if sigma in perms:
            logger.warning("⚠️ Pomijam '%s' przy M=%d: duplikat wcześniejszego elementu", label, m)
            continue
        elements.append(perm_matrix(sigma))
        labels.append(label)
        perms.append(sigma)
    return GeneratorBasis(m, tuple(elements), tuple(labels), (HINT_PERMUTATION,) * len(elements), tuple(perms))


def standard_catalog(m: int) -> GeneratorBasis:
    """Katalog pięciu generycznych permutacji.

    Kolejność: przesunięcie cykliczne, odbicie, transpozycja (0 1),
    zamiana połówek {0..M/2−1} ↔ {M/2..M−1}, 3-cykl (0 1 2). Elementy
    niemożliwe do zbudowania przy danym M lub zduplikowane są pomijane
    z ostrzeżeniem.

    Args:
        m (int): Wymiar M ≥ 1.

    Returns:
        GeneratorBasis: Baza z podpowiedzią "permutation".
    """
    if m < 1:
        raise ValidationError(f"M musi być ≥ 1, otrzymano {m}")
    named = [("shift", shift_permutation(m)), ("reflection", reflection_permutation(m))]
    if m >= 2:
        named.append(("transposition", Permutation.from_cycles(m, [(0, 1)])))
    if m >= 4 and m % 2 == 0:
        named.append(("block-swap", block_swap_permutation(m)))
    else:
        logger.warning("⚠️ Pomijam 'block-swap' przy M=%d (wymaga parzystego M ≥ 4)", m)
    if m >= 3:
        named.append(("3-cycle", Permutation.from_cycles(m, [(0, 1, 2)])))
    else:
        logger.warning("⚠️ Pomijam '3-cycle' przy M=%d (wymaga M ≥ 3)", m)
    return _permutation_basis(m, named)


def perm_diff_basis(perms) -> GeneratorBasis:
    """Baza różnic P_σ − I, etykietowana notacją cykli.

    Raises:
        ValidationError: Pusta lista, identyczność lub różne stopnie.
    """
    perms = list(perms)
    if not perms:
        raise ValidationError("Baza różnic permutacji wymaga co najmniej jednej permutacji")
    m = perms[0].degree
    eye = np.eye(m)
    elements = []
    for sigma in perms:
        if sigma.degree != m:
            raise ValidationError("Permutacje bazy mają różne stopnie")
        if sigma.is_identity():
            raise ValidationError("Identyczność daje P − I = 0, co nie jest elementem bazy")
        elements.append(perm_matrix(sigma) - eye)
    labels = tuple(f"P{s.cycle_notation()} - I" for s in perms)
    return GeneratorBasis(m, tuple(elements), labels, (HINT_PERM_DIFF,) * len(perms), tuple(perms))


def c6_example_perms() -> list[Permutation]:
    """τ, τ², ρ, η dla przykładu C6: cykl, jego kwadrat, odbicie i transpozycja (0 2)."""
    tau = shift_permutation(6)
    rho = Permutation.from_cycles(6, [(0, 5), (1, 4), (2, 3)])
    eta = Permutation.from_cycles(6, [(0, 2)])
    return [tau, tau * tau, rho, eta]


def c6_example_basis() -> GeneratorBasis:
    return perm_diff_basis(c6_example_perms())


def chirp_generator(m: int, psi: float) -> NDArray:
    """Zwraca B(ψ) = U(ψ)·P·U(ψ)*, U(ψ) = diag(e^{−jπψn²}).

    Jedyne niezerowe wpisy leżą w pozycjach (n, (n+1) mod M) i mają moduł 1.
    """
    n = np.arange(m)
    u = np.exp(-1j * np.pi * psi * n.astype(float) ** 2)
    return cyclic_shift(m).astype(complex) * u[:, None] * u.conj()[None, :]


def chirp_basis(m: int, psi: float) -> GeneratorBasis:
    return GeneratorBasis(m, (chirp_generator(m, psi),), (f"chirp(psi={psi:g})",), (HINT_DENSE,), (None,))


# =============================================================================
# BAZY UŻYTKOWNIKA
# =============================================================================
def _as_permutation(e: NDArray) -> Permutation | None:
    """Zwraca σ, jeśli e jest dokładną macierzą 0/1 permutacji."""
    if np.iscomplexobj(e) and np.any(e.imag != 0):
        return None
    re = np.real(e)
    if not np.all((re == 0) | (re == 1)):
        return None
    if not (np.all(re.sum(axis=0) == 1) and np.all(re.sum(axis=1) == 1)):
        return None
    return Permutation(tuple(int(j) for j in np.argmax(re, axis=1)))


def infer_hint(e: NDArray):
    """Rozpoznaje strukturę elementu: (podpowiedź, σ lub None)."""
    sigma = _as_permutation(e)
    if sigma is not None:
        return HINT_PERMUTATION, sigma
    sigma = _as_permutation(np.asarray(e) + np.eye(e.shape[0]))
    if sigma is not None and not sigma.is_identity():
        return HINT_PERM_DIFF, sigma
    return HINT_DENSE, None


def user_basis(elements, labels=None) -> GeneratorBasis:
    """Baza z dowolnych macierzy; struktura permutacyjna rozpoznawana automatycznie."""
    elements = [np.asarray(e) for e in elements]
    if not elements:
        raise ValidationError("Baza użytkownika jest pusta")
    m = elements[0].shape[0]
    labels = list(labels) if labels is not None else [f"B{k}" for k in range(len(elements))]
    if len(labels) != len(elements):
        raise ValidationError(f"Liczba etykiet ({len(labels)}) ≠ liczba elementów ({len(elements)})")
    hints, perms = [], []
    for e in elements:
        if e.shape != (m, m):
            raise ValidationError(f"Element bazy ma kształt {e.shape}, oczekiwano {m}×{m}")
        hint, sigma = infer_hint(e)
        hints.append(hint)
        perms.append(sigma)
    return GeneratorBasis(m, tuple(elements), tuple(labels), tuple(hints), tuple(perms))


# =============================================================================
# MACIERZ GRAMA
# =============================================================================
def gram(basis: GeneratorBasis, check: bool = True) -> NDArray:
    """Macierz Grama G_ij = ⟨B_i, B_j⟩_F = Tr(B_i* B_j).

    Args:
        basis (GeneratorBasis): Baza generatorów.
        check (bool): Sprawdź dodatnią określoność (rozkład Cholesky'ego).

    Returns:
        np.ndarray: Hermitowska macierz d×d.

    Raises:
        DependentBasisError: G nie jest dodatnio określona; wyjątek niesie
            wektor prawie zerowy kombinacji.
    """
    if basis.d == 0:
        raise ValidationError("Pusta baza nie ma macierzy Grama")
    flat = np.stack([np.ravel(e) for e in basis.elements])
    g = flat.conj() @ flat.T
    g = (g + g.conj().T) / 2
    if check:
        try:
            scipy.linalg.cholesky(g, lower=True)
        except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as err:
            w, v = scipy.linalg.eigh(g)
            raise DependentBasisError(
                f"Baza {list(basis.labels)} jest liniowo zależna (λ_min(G) = {w[0]:.3e})",
                null_vector=v[:, 0],
            ) from err
    return g
