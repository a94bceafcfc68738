"""Moduł eksperymentów identyfikowalności grup.

Dwa wykonywalne sprawdziany:
- niewrażliwość kraty komutantów: dla G1 ⊆ G2 kowariancja R = P_{G2}(W)
  leży w komutancie obu grup, więc żaden test oparty na komutacji z R nie
  odróżni G1 od G2;
- dychotomia modelu generatywnego: R = P_{G*}(W) odtwarza G* prawie na
  pewno, gdy żadna ścisła nadgrupa nie zachowuje wszystkich orbit par,
  a w przeciwnym razie deterministycznie daje nadgrupę H.

Zespół losowy W: domyślnie rzeczywisty symetryczny (i.i.d. N(0, 1) na i nad
przekątną), opcjonalnie zespolony hermitowski.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd

from config import COLLISION_TOL, DEFAULT_SEED, GENERATIVE_MAX_DEGREE, ORACLE_MAX_DEGREE
from errors import DegreeCapError, ValidationError
from perm_group import (
    Ambiguous,
    Identifiable,
    Permutation,
    PermutationGroup,
    aut_bruteforce,
    classify_identifiability,
    closure,
    in_commutant,
    orbit_pairs,
    reynolds_project,
)

logger = logging.getLogger(__name__)

REAL_SYMMETRIC = "real-symmetric"
COMPLEX_HERMITIAN = "complex-hermitian"
ENSEMBLES = (REAL_SYMMETRIC, COMPLEX_HERMITIAN)


def random_hermitian(m: int, rng, ensemble: str = REAL_SYMMETRIC) -> np.ndarray:
    """Losowa macierz W z absolutnie ciągłym rozkładem."""
    if ensemble == REAL_SYMMETRIC:
        a = rng.standard_normal((m, m))
        return np.triu(a) + np.triu(a, 1).T
    if ensemble == COMPLEX_HERMITIAN:
        a = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
        return (a + a.conj().T) / 2
    raise ValidationError(f"Nieznany zespół '{ensemble}'; dostępne: {', '.join(ENSEMBLES)}")


def random_subgroup_chain(m: int, rng, n_gens: int = 2):
    """Łańcuch G1 ⊆ G2: G2 z losowych generatorów, G1 z ich podzbioru."""
    gens = [Permutation(tuple(int(i) for i in rng.permutation(m))) for _ in range(n_gens)]
    g2 = closure(m, gens)
    k = int(rng.integers(0, n_gens))
    g1 = closure(m, gens[:k])
    return g1, g2


# =============================================================================
# NIEWRAŻLIWOŚĆ KRATY KOMUTANTÓW
# =============================================================================
@dataclass(frozen=True)
class LatticeReport:
    """Residua ‖P_G(R) − R‖_F / ‖R‖_F dla obu grup łańcucha."""

    order_g1: int
    order_g2: int
    residual_g1: float
    residual_g2: float
    r_in_commutant_g1: bool
    commutant_reversal: bool

    def passed(self, tol: float = 1e-12) -> bool:
        return (
            self.residual_g1 <= tol
            and self.residual_g2 <= tol
            and self.r_in_commutant_g1
            and self.commutant_reversal
        )


def lattice_insensitivity_check(
    g1: PermutationGroup,
    g2: PermutationGroup,
    seed: int = DEFAULT_SEED,
    ensemble: str = REAL_SYMMETRIC,
) -> LatticeReport:
    """Sprawdza, że R = P_{G2}(W) jest punktem stałym P_{G1} i P_{G2}.

    Dodatkowo wskaźniki orbit par G2 (baza komutantu A_{G2}) muszą leżeć
    w komutancie G1, co świadczy o odwróceniu porządku A_{G1} ⊇ A_{G2}.

    Raises:
        ValidationError: G1 nie jest podgrupą G2.
        DegreeCapError: M > 8.
    """
    if g1.degree > ORACLE_MAX_DEGREE:
        raise DegreeCapError(f"Stopień {g1.degree} przekracza limit {ORACLE_MAX_DEGREE}")
    if not g1.issubgroup(g2):
        raise ValidationError(f"G1 (rząd {g1.order}) nie jest podgrupą G2 (rząd {g2.order})")

    rng = np.random.default_rng(seed)
    w = random_hermitian(g2.degree, rng, ensemble)
    r = reynolds_project(g2, w)
    r_norm = float(np.linalg.norm(r))
    res1 = float(np.linalg.norm(reynolds_project(g1, r) - r)) / r_norm
    res2 = float(np.linalg.norm(reynolds_project(g2, r) - r)) / r_norm

    partition = orbit_pairs(g2)
    reversal = all(in_commutant(g1, partition.indicator(b)) for b in range(partition.n_blocks))

    report = LatticeReport(g1.order, g2.order, res1, res2, in_commutant(g1, r), reversal)
    logger.debug("Krata komutantów |G1|=%d ⊆ |G2|=%d: %s", g1.order, g2.order, report)
    return report


# =============================================================================
# DYCHOTOMIA MODELU GENERATYWNEGO
# =============================================================================
@dataclass(frozen=True)
class GenerativeReport:
    """Wynik eksperymentu generatywnego.

    Attributes:
        classification (Identifiable | Ambiguous): Przewidywanie klasyfikatora.
        ensemble (str): Użyty zespół losowy.
        trials (pd.DataFrame): Kolumny trial, aut_order, equals_gstar,
            contains_hmax, collisions.
    """

    classification: object
    ensemble: str
    trials: pd.DataFrame

    @property
    def n_trials(self) -> int:
        return len(self.trials)

    @property
    def equal_count(self) -> int:
        return int(self.trials["equals_gstar"].sum())

    @property
    def containment_count(self) -> int:
        return int(self.trials["contains_hmax"].sum())

    @property
    def collision_trials(self) -> int:
        return int((self.trials["collisions"] > 0).sum())

    def summary_lines(self) -> list[str]:
        cls = self.classification
        lines = [
            f"classification\t{'Identifiable' if cls.is_identifiable else 'Ambiguous'}",
            f"gstar_order\t{cls.group.order}",
            f"ensemble\t{self.ensemble}",
            f"trials\t{self.n_trials}",
            f"aut_equals_gstar\t{self.equal_count}",
        ]
        if isinstance(cls, Ambiguous):
            lines.append(f"hmax_order\t{cls.hmax.order}")
            lines.append(f"aut_contains_hmax\t{self.containment_count}")
        lines.append(f"collision_trials\t{self.collision_trials}")
        return lines


def orbit_collisions(r: np.ndarray, partition, tol: float = COLLISION_TOL) -> list[tuple[int, int]]:
    """Pary różnych bloków, na których R przyjmuje równe wartości (w granicach tol)."""
    values = np.array([np.mean(r.ravel()[idx]) for idx in partition.blocks()])
    scale = max(1.0, float(np.max(np.abs(values))))
    out = []
    for a in range(len(values)):
        for b in range(a + 1, len(values)):
            if abs(values[a] - values[b]) <= tol * scale:
                out.append((a, b))
    return out


def generative_experiment(
    gstar: PermutationGroup,
    trials: int = 20,
    seed: int = DEFAULT_SEED,
    ensemble: str = REAL_SYMMETRIC,
) -> GenerativeReport:
    """Porównuje Aut(P_{G*}(W)) z przewidywaniem klasyfikatora.

    W trybie rzeczywistym symetrycznym klasyfikator scala bloki (i, j)
    i (j, i). Każda próba ma własne ziarno pochodne (seed, numer próby).

    Raises:
        DegreeCapError: M > 6.
        ValidationError: Nieznany zespół lub trials < 1.
    """
    if gstar.degree > GENERATIVE_MAX_DEGREE:
        raise DegreeCapError(f"Stopień {gstar.degree} przekracza limit {GENERATIVE_MAX_DEGREE}")
    if ensemble not in ENSEMBLES:
        raise ValidationError(f"Nieznany zespół '{ensemble}'")
    if trials < 1:
        raise ValidationError(f"Liczba prób musi być ≥ 1, otrzymano {trials}")

    merged = ensemble == REAL_SYMMETRIC
    classification = classify_identifiability(gstar, merge_transpose=merged)
    partition = orbit_pairs(gstar)
    if merged:
        partition = partition.merge_transpose()

    rows = []
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        r = reynolds_project(gstar, random_hermitian(gstar.degree, rng, ensemble))
        aut = aut_bruteforce(r)
        collisions = orbit_collisions(r, partition)
        equals = aut.elements == gstar.elements
        if isinstance(classification, Ambiguous):
            contains = classification.hmax.issubgroup(aut)
            if not contains:
                logger.error("❌ Próba %d: Aut(R) rzędu %d nie zawiera H rzędu %d",
                             t, aut.order, classification.hmax.order)
        else:
            contains = equals
        if collisions:
            logger.warning("⚠️ Próba %d: kolizje wartości orbit %s", t, collisions)
        if isinstance(classification, Identifiable) and not equals:
            logger.warning("⚠️ Próba %d: Aut(R) rzędu %d ≠ G* rzędu %d (kolizje: %s)",
                           t, aut.order, gstar.order, collisions)
        rows.append({
            "trial": t,
            "aut_order": aut.order,
            "equals_gstar": equals,
            "contains_hmax": contains,
            "collisions": len(collisions),
        })

    frame = pd.DataFrame(rows, columns=["trial", "aut_order", "equals_gstar", "contains_hmax", "collisions"])
    report = GenerativeReport(classification, ensemble, frame)
    logger.info("📊 Eksperyment generatywny: %s", "; ".join(report.summary_lines()))
    return report
