"""Moduł sekwencyjnego odkrywania generatorów z deflacją grupową.

Algorytm w każdej iteracji:
1. Deflacja: rzut bazy na dopełnienie ortogonalne (Frobenius) przestrzeni
   span{P_g : g ∈ G_k} już odkrytej podgrupy.
2. Rozwiązanie problemu własnego podwójnego komutatora na bazie po deflacji.
3. Zaokrąglenie A* do permutacji metodą węgierską.
4. Test akceptacji: w trybie τ = 0 permutacja musi komutować z R w granicach
   współdzielonej tolerancji zera, dla τ > 0 wystarcza δ(P_σ, R) ≤ τ.
5. Po akceptacji G_{k+1} = ⟨G_k, σ⟩; po odrzuceniu zwracane jest G_k.

Każda iteracja zostawia `IterationRecord`, a cały przebieg `SubgroupTrace`
z przyczyną zakończenia.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd

from assignment import max_assignment
from basis_catalog import HINT_DENSE, GeneratorBasis
from config import CLOSURE_CAP, DROP_TOL, OVERLAP_TOL, ZERO_TOL
from dc_gevp import GevpSolution, residual, select_generator
from errors import BasisExhaustedError, ValidationError
from matrix_core import as_hermitian, as_square
from perm_group import Permutation, PermutationGroup, closure, is_commuting, perm_matrix, trivial_group

logger = logging.getLogger(__name__)

# Kolumna uznawana za zerową przy ortogonalizacji P_g
_GS_TOL = 1e-10


class TerminationCause(enum.Enum):
    REJECTED = "Rejected"
    ITERATION_CAP = "IterationCap"
    BASIS_EXHAUSTED = "BasisExhausted"


@dataclass(frozen=True)
class IterationRecord:
    """Zapis jednej iteracji.

    Attributes:
        index (int): Numer iteracji (od 1).
        deflated_dim (int): Liczba elementów bazy po deflacji.
        gevp (GevpSolution): Rozwiązanie na bazie po deflacji.
        rounded (Permutation): Wynik zaokrąglenia A*.
        overlap (float): Re⟨A*, P_σ⟩_F.
        rounded_residual (float): δ(P_σ, R).
        accepted (bool): Czy σ dołączono do grupy.
        group_order_after (int): |G| po iteracji.
        orthogonality_residual (float): max_h |⟨A*, P_h⟩_F| / ‖A*‖_F
            względem grupy sprzed iteracji.
        note (str): Powód odrzucenia lub pusty napis.
    """

    index: int
    deflated_dim: int
    gevp: GevpSolution
    rounded: Permutation
    overlap: float
    rounded_residual: float
    accepted: bool
    group_order_after: int
    orthogonality_residual: float = 0.0
    note: str = ""

    @property
    def lambda_min(self) -> float:
        return self.gevp.lambda_min


@dataclass(frozen=True)
class SubgroupTrace:
    records: tuple
    final_group: PermutationGroup
    termination: TerminationCause

    @property
    def accepted_count(self) -> int:
        return sum(1 for rec in self.records if rec.accepted)

    def accepted_permutations(self) -> list[Permutation]:
        return [rec.rounded for rec in self.records if rec.accepted]

    def to_frame(self) -> pd.DataFrame:
        """Tabela rekordów iteracji (jeden wiersz na iterację)."""
        rows = []
        for rec in self.records:
            rows.append({
                "k": rec.index,
                "deflated_dim": rec.deflated_dim,
                "lambda_min": rec.lambda_min,
                "gevp_residual": rec.gevp.residual,
                "rounded": str(rec.rounded),
                "rounded_cycles": rec.rounded.cycle_notation(),
                "overlap": rec.overlap,
                "rounded_residual": rec.rounded_residual,
                "accepted": rec.accepted,
                "group_order_after": rec.group_order_after,
                "orthogonality_residual": rec.orthogonality_residual,
                "note": rec.note,
            })
        return pd.DataFrame(rows, columns=[
            "k", "deflated_dim", "lambda_min", "gevp_residual", "rounded", "rounded_cycles",
            "overlap", "rounded_residual", "accepted", "group_order_after",
            "orthogonality_residual", "note",
        ])


# =============================================================================
# DEFLACJA
# =============================================================================
def group_span_basis(g: PermutationGroup) -> np.ndarray:
    """Ortonormalny układ (M², k) rozpinający span{vec(P_h) : h ∈ G}.

    Gram-Schmidt z drugim przebiegiem reortogonalizacji; kolumny prawie
    zerowe po ortogonalizacji są pomijane.
    """
    m = g.degree
    q = np.zeros((m * m, 0))
    for h in g.sorted_elements():
        v = perm_matrix(h).ravel()
        w = v - q @ (q.T @ v)
        w = w - q @ (q.T @ w)
        n = np.linalg.norm(w)
        if n > _GS_TOL * np.linalg.norm(v):
            q = np.column_stack([q, w / n])
    return q


def _project_out(q: np.ndarray, v: np.ndarray) -> np.ndarray:
    w = v - q @ (q.conj().T @ v)
    return w - q @ (q.conj().T @ w)


def deflate_basis(basis: GeneratorBasis, g: PermutationGroup, drop_tol: float = DROP_TOL) -> GeneratorBasis:
    """Rzut bazy na dopełnienie ortogonalne span{P_h : h ∈ G}.

    Elementy, których norma po rzucie spadła poniżej drop_tol · norma przed
    rzutem, są usuwane. Następnie zachłanne przejście w kolejności bazy
    usuwa elementy liniowo zależne od wcześniejszych, więc Gram pozostaje
    dodatnio określony. Grupa trywialna też deflatuje: usuwana jest
    składowa wzdłuż I, a elementy już do niej ortogonalne (np. permutacje
    bez punktów stałych) przechodzą bez zmian, z zachowaną podpowiedzią
    struktury.

    Args:
        basis (GeneratorBasis): Baza wejściowa.
        g (PermutationGroup): Odkryta dotąd podgrupa G_k.
        drop_tol (float): Względny próg usunięcia elementu.

    Returns:
        GeneratorBasis: Elementy po deflacji (etykiety oryginalne).

    Raises:
        ValidationError: Niezgodne wymiary.
        BasisExhaustedError: Deflacja usunęła wszystkie elementy.
    """
    if basis.dim != g.degree:
        raise ValidationError(f"Wymiar bazy {basis.dim} ≠ stopień grupy {g.degree}")
    m = basis.dim
    q = group_span_basis(g)

    survivors = []
    for k, e in enumerate(basis.elements):
        v = np.ravel(e)
        # Element dokładnie ortogonalny do span{P_h} przechodzi bez zmian
        untouched = not np.any(q.T @ v)
        w = v if untouched else _project_out(q, v)
        if np.linalg.norm(w) < drop_tol * np.linalg.norm(v):
            logger.debug("Deflacja usuwa '%s' (leży w span{P_g})", basis.labels[k])
            continue
        survivors.append((k, w, untouched))

    # Zachłanne usuwanie zależności w kolejności bazy
    kept = []
    span = np.zeros((m * m, 0), dtype=complex)
    for k, w, untouched in survivors:
        rest = _project_out(span, w.astype(complex))
        n = np.linalg.norm(rest)
        if n < drop_tol * np.linalg.norm(w):
            logger.debug("Deflacja usuwa '%s' (zależny od wcześniejszych elementów)", basis.labels[k])
            continue
        span = np.column_stack([span, rest / n])
        kept.append((k, w, untouched))

    if not kept:
        raise BasisExhaustedError(f"Deflacja względem grupy rzędu {g.order} usunęła całą bazę")

    elements, hints, perms = [], [], []
    for k, w, untouched in kept:
        if untouched:
            elements.append(basis.elements[k])
            hints.append(basis.hints[k])
            perms.append(basis.perms[k])
        else:
            elements.append(w.reshape(m, m))
            hints.append(HINT_DENSE)
            perms.append(None)
    labels = tuple(basis.labels[k] for k, _, _ in kept)
    return GeneratorBasis(m, tuple(elements), labels, tuple(hints), tuple(perms))


def orthogonality_residual(a: np.ndarray, g: PermutationGroup) -> float:
    """max_h |⟨A, P_h⟩_F| / ‖A‖_F po elementach h grupy."""
    a_norm = float(np.linalg.norm(a))
    if a_norm == 0.0:
        return 0.0
    worst = 0.0
    for h in g.elements:
        idx = np.asarray(h.images)
        overlap = abs(np.sum(np.conj(a[np.arange(g.degree), idx])))
        worst = max(worst, float(overlap))
    return worst / a_norm


# =============================================================================
# ZAOKRĄGLANIE I PĘTLA SEKWENCYJNA
# =============================================================================
def round_to_permutation(a):
    """Najbliższa permutacja: argmax_σ Re⟨A, P_σ⟩_F przez przypisanie liniowe.

    Returns:
        tuple: (σ, nakładanie Σ_i Re A[i, σ(i)]).
    """
    a = as_square(a, "A")
    return max_assignment(np.real(a))


def _accepts(sigma: Permutation, r: np.ndarray, tau: float, rres: float) -> bool:
    if tau == 0:
        return is_commuting(sigma, r, ZERO_TOL)
    return rres <= tau


def sequential_select(
    r,
    basis: GeneratorBasis,
    tau: float = 0.0,
    k_max: int = 10,
    drop_tol: float = DROP_TOL,
    cap: int = CLOSURE_CAP,
) -> SubgroupTrace:
    """Sekwencyjne odkrywanie podgrupy Aut(R) z deflacją.

    Args:
        r: Macierz hermitowska R.
        basis (GeneratorBasis): Baza generatorów.
        tau (float): Próg akceptacji; 0 oznacza tryb tolerancji zera.
        k_max (int): Maksymalna liczba zaakceptowanych iteracji.
        drop_tol (float): Próg usuwania elementów przy deflacji.
        cap (int): Limit liczby elementów domknięcia.

    Returns:
        SubgroupTrace: Rekordy iteracji, końcowa grupa i przyczyna zakończenia.

    Raises:
        ValidationError: τ < 0, k_max < 1 lub niezgodne wymiary.
    """
    if tau < 0 or not np.isfinite(tau):
        raise ValidationError(f"τ musi być nieujemne, otrzymano {tau}")
    if k_max < 1:
        raise ValidationError(f"k_max musi być ≥ 1, otrzymano {k_max}")
    r = as_hermitian(r, "R")
    m = r.shape[0]
    if basis.dim != m:
        raise ValidationError(f"Wymiar bazy {basis.dim} ≠ wymiar macierzy R {m}")

    group = trivial_group(m)
    records = []
    accepted = 0
    iteration = 0
    termination = TerminationCause.ITERATION_CAP

    while accepted < k_max:
        iteration += 1
        try:
            current = deflate_basis(basis, group, drop_tol)
        except BasisExhaustedError as err:
            logger.info("🔄 Iteracja %d: %s", iteration, err)
            termination = TerminationCause.BASIS_EXHAUSTED
            break

        sol = select_generator(r, current)
        orth = orthogonality_residual(sol.generator, group)
        sigma, overlap = round_to_permutation(sol.generator)
        rres = residual(perm_matrix(sigma), r)

        note = ""
        if overlap <= OVERLAP_TOL:
            note = "nakładanie niedodatnie"
        elif sigma in group:
            note = "permutacja już w grupie"
        elif not _accepts(sigma, r, tau, rres):
            note = "test komutacji niespełniony"

        if note:
            logger.info("❌ Iteracja %d: odrzucono %s (%s, δ=%.3e, nakładanie=%.3e)",
                        iteration, sigma.cycle_notation(), note, rres, overlap)
            records.append(IterationRecord(
                iteration, current.d, sol, sigma, overlap, rres, False, group.order, orth, note,
            ))
            termination = TerminationCause.REJECTED
            break

        group = closure(m, list(group.generators) + [sigma], cap=cap)
        accepted += 1
        logger.info("✅ Iteracja %d: zaakceptowano %s, |G| = %d",
                    iteration, sigma.cycle_notation(), group.order)
        records.append(IterationRecord(
            iteration, current.d, sol, sigma, overlap, rres, True, group.order, orth,
        ))

    logger.info("Zakończono po %d iteracjach (%s), %s", iteration, termination.value, group.describe())
    return SubgroupTrace(tuple(records), group, termination)
