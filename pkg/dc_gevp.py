"""Moduł wyboru generatora przez problem własny podwójnego komutatora.

Dla kowariancji R i bazy {B_1..B_d} składa macierze
    M_ij = Tr(B_i* [R, [R, B_j]]),   G_ij = Tr(B_i* B_j),
rozwiązuje Mc = λGc i odtwarza optymalny generator A* = Σ c*_k B_k.
Minimalna wartość własna jest certyfikatem: zero (w granicach tolerancji)
oznacza, że w rozpiętości bazy istnieje generator dokładnie komutujący z R,
a w przeciwnym razie jest to dokładna luka optymalności, bo
δ(A*, R)² · ‖R‖_F² = λ_min przy normalizacji c*Gc = 1.

Asemblacja ma dwie ścieżki:
- pętla "C_j ← R²B_j − 2RB_jR + B_jR²" z jednokrotnym policzeniem R²
  (dowolne elementy gęste),
- ścieżka permutacyjna: ponieważ ⟨B_i, [R,[R,B_j]]⟩ = ⟨[R,B_i], [R,B_j]⟩,
  a dla B = P_σ (lub P_σ − I) komutator [R, B] to różnica permutacji
  kolumn i wierszy R, cała macierz M kosztuje O(d²M²).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from basis_catalog import HINT_DENSE, GeneratorBasis, gram
from config import DEGENERACY_GAP, ZERO_TOL
from errors import ValidationError
from matrix_core import as_hermitian, as_square, double_commutator, gevp_full

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GevpSolution:
    """Certyfikat wyboru generatora.

    Attributes:
        lambda_min (float): Minimalna uogólniona wartość własna (≥ 0).
        coefficients (np.ndarray): c* z c*Gc = 1.
        generator (np.ndarray): A* = Σ c*_k B_k.
        residual (float): δ(A*, R).
        spectrum (np.ndarray): Wszystkie wartości własne rosnąco.
        condition_ratio (float): λ_min / λ_max (0 gdy λ_max = 0).
        multiplicity (int): Wymiar zdegenerowanej przestrzeni własnej λ_min.
        certified (bool): λ_min ≤ ZERO_TOL · ‖R‖_F².
        labels (tuple[str, ...]): Etykiety bazy, w kolejności współczynników.
    """

    lambda_min: float
    coefficients: NDArray
    generator: NDArray
    residual: float
    spectrum: NDArray
    condition_ratio: float
    multiplicity: int
    certified: bool
    labels: tuple

    def summary_lines(self) -> list[str]:
        lines = [
            f"lambda_min\t{self.lambda_min:.6e}",
            f"residual\t{self.residual:.6e}",
            f"condition_ratio\t{self.condition_ratio:.6e}",
            f"multiplicity\t{self.multiplicity}",
            f"certified\t{'yes' if self.certified else 'no'}",
            "spectrum\t" + " ".join(f"{x:.6e}" for x in self.spectrum),
        ]
        for label, c in zip(self.labels, self.coefficients):
            lines.append(f"c[{label}]\t{_format_scalar(c)}")
        return lines


def _format_scalar(c) -> str:
    c = complex(c)
    if c.imag == 0:
        return f"{c.real:.12g}"
    return f"{c.real:.12g} {c.imag:+.12g}i"


# =============================================================================
# ASEMBLACJA
# =============================================================================
def _commutator_with_r(r: NDArray, basis: GeneratorBasis, k: int) -> NDArray:
    """[R, B_k]; dla elementów permutacyjnych R[:, σ⁻¹] − R[σ, :]."""
    sigma = basis.perms[k]
    if basis.hints[k] == HINT_DENSE or sigma is None:
        b = basis.elements[k]
        return r @ b - b @ r
    idx = np.asarray(sigma.images)
    inv = np.asarray(sigma.inverse().images)
    return r[:, inv] - r[idx, :]


def _check_dims(r: NDArray, basis: GeneratorBasis):
    if basis.d == 0:
        raise ValidationError("Baza generatorów jest pusta")
    if basis.dim != r.shape[0]:
        raise ValidationError(f"Wymiar bazy {basis.dim} ≠ wymiar macierzy R {r.shape[0]}")


def commutator_stack(r, basis: GeneratorBasis) -> NDArray:
    """Tablica (d, M, M) komutatorów [R, B_k]."""
    r = as_hermitian(r, "R")
    _check_dims(r, basis)
    return np.stack([_commutator_with_r(r, basis, k) for k in range(basis.d)])


def assemble(r, basis: GeneratorBasis, method: str = "auto"):
    """Składa macierze M (podwójny komutator) i G (Gram) nad bazą.

    Args:
        r: Macierz hermitowska R.
        basis (GeneratorBasis): Baza generatorów.
        method (str): "loop" (pętla z R²), "commutator" (iloczyny [R, B_k])
            lub "auto" (ścieżka komutatorowa, gdy wszystkie elementy są
            permutacyjne).

    Returns:
        tuple: (m, g), obie hermitowskie d×d.

    Raises:
        ValidationError: Niezgodne wymiary lub nieznana metoda.
        DependentBasisError: Baza liniowo zależna.
    """
    r = as_hermitian(r, "R")
    _check_dims(r, basis)
    g = gram(basis)

    if method == "auto":
        method = "commutator" if basis.is_permutation_structured() else "loop"

    if method == "commutator":
        flat = np.stack([np.ravel(_commutator_with_r(r, basis, k)) for k in range(basis.d)])
        m = flat.conj() @ flat.T
    elif method == "loop":
        r2 = r @ r
        flat_b = np.stack([np.ravel(b) for b in basis.elements])
        cols = [np.ravel(double_commutator(r, b, r2)) for b in basis.elements]
        m = flat_b.conj() @ np.stack(cols, axis=1)
    else:
        raise ValidationError(f"Nieznana metoda asemblacji: {method}")

    m = (m + m.conj().T) / 2
    return m, g


# =============================================================================
# WYBÓR GENERATORA
# =============================================================================
def _degenerate_choice(vectors: NDArray, tol: float = 1e-12) -> NDArray:
    """Leksykograficznie największy wektor na G-sferze przestrzeni własnej.

    Kolumny `vectors` są G-ortonormalne, więc c = V·y z ‖y‖ = 1 leży na
    sferze c*Gc = 1. Pierwsza współrzędna, której przestrzeń nie zeruje,
    jest maksymalizowana przez y = conj(V[j, :]) / ‖V[j, :]‖.
    """
    scale = max(float(np.max(np.abs(vectors))), 1.0)
    for row in vectors:
        n = float(np.linalg.norm(row))
        if n > tol * scale:
            return vectors @ (row.conj() / n)
    return vectors[:, 0]


def _fix_phase(c: NDArray) -> NDArray:
    """Obraca c tak, by współczynnik o największym module był rzeczywisty dodatni."""
    k = int(np.argmax(np.abs(c)))
    if np.abs(c[k]) == 0:
        return c
    c = c * (np.abs(c[k]) / c[k])
    if not np.iscomplexobj(c) or np.all(np.imag(c) == 0):
        return np.real(c)
    return c


def select_generator(r, basis: GeneratorBasis, tol: float = ZERO_TOL, method: str = "auto") -> GevpSolution:
    """Optymalny generator w rozpiętości bazy wraz z certyfikatem.

    Args:
        r: Niezerowa macierz hermitowska R.
        basis (GeneratorBasis): Baza generatorów.
        tol (float): Względna tolerancja zera certyfikatu.
        method (str): Ścieżka asemblacji (patrz `assemble`).

    Returns:
        GevpSolution: λ_min, c*, A*, δ, widmo i diagnostyka degeneracji.
    """
    r = as_hermitian(r, "R")
    r_norm = float(np.linalg.norm(r))
    if r_norm == 0.0:
        raise ValidationError("R jest macierzą zerową; residuum δ jest nieokreślone")

    m, g = assemble(r, basis, method=method)
    sol = gevp_full(m, g)
    w, vectors = sol.eigenvalues, sol.eigenvectors

    zero_bound = tol * r_norm ** 2
    gap = DEGENERACY_GAP * max(1.0, abs(float(w[-1])))
    cluster = (w <= w[0] + gap) | (w <= zero_bound)
    multiplicity = int(np.count_nonzero(cluster))

    if multiplicity > 1:
        logger.debug("Zdegenerowane λ_min: krotność %d", multiplicity)
        c = _degenerate_choice(vectors[:, cluster])
    else:
        c = vectors[:, 0]
    c = _fix_phase(c)

    a_star = basis.combine(c)
    if basis.is_permutation_structured():
        stack = np.stack([_commutator_with_r(r, basis, k) for k in range(basis.d)])
        comm_norm = float(np.linalg.norm(np.tensordot(c, stack, axes=1)))
    else:
        comm_norm = float(np.linalg.norm(a_star @ r - r @ a_star))
    a_norm = float(np.linalg.norm(a_star))
    delta = comm_norm / (a_norm * r_norm) if a_norm > 0 else float("inf")

    lam = float(w[0])
    lam_max = float(w[-1])
    ratio = lam / lam_max if lam_max > 0 else 0.0

    solution = GevpSolution(
        lambda_min=lam,
        coefficients=c,
        generator=a_star,
        residual=delta,
        spectrum=w,
        condition_ratio=ratio,
        multiplicity=multiplicity,
        certified=lam <= zero_bound,
        labels=tuple(basis.labels),
    )
    logger.debug("DC-GEVP: d=%d, λ_min=%.3e, δ=%.3e, certyfikat=%s", basis.d, lam, delta, solution.certified)
    return solution


def residual(a, r) -> float:
    """Residuum komutacji δ(A, R) = ‖[A, R]‖_F / (‖A‖_F · ‖R‖_F).

    Raises:
        ValidationError: A lub R zerowe albo niezgodne wymiary.
    """
    a = as_square(a, "A")
    r = as_hermitian(r, "R")
    if a.shape != r.shape:
        raise ValidationError(f"Niezgodne wymiary: {a.shape} i {r.shape}")
    a_norm = float(np.linalg.norm(a))
    r_norm = float(np.linalg.norm(r))
    if a_norm == 0.0 or r_norm == 0.0:
        raise ValidationError("Residuum δ wymaga niezerowych A i R")
    return float(np.linalg.norm(a @ r - r @ a)) / (a_norm * r_norm)


def rayleigh_quotient(m, g, c) -> float:
    """c*Mc / c*Gc."""
    c = np.asarray(c)
    return float(np.real(np.vdot(c, m @ c)) / np.real(np.vdot(c, g @ c)))
