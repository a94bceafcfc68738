"""Moduł dokładnego przypisania liniowego (metoda węgierska).

Używany do zaokrąglania gęstego generatora do najbliższej permutacji.
Rozwiązanie optymalne daje `scipy.optimize.linear_sum_assignment`;
przejście końcowe wybiera spośród przypisań optymalnych to
o leksykograficznie najmniejszej tablicy obrazów, więc wynik nie zależy
od platformy ani od kolejności pracy solvera.
"""

import logging

import numpy as np
from scipy.optimize import linear_sum_assignment

from config import ASSIGNMENT_TIE_TOL
from errors import ValidationError
from perm_group import Permutation

logger = logging.getLogger(__name__)


def _validate_score(score) -> np.ndarray:
    arr = np.asarray(score)
    if np.iscomplexobj(arr):
        raise ValidationError("Macierz ocen przypisania musi być rzeczywista")
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise ValidationError(f"Przypisanie wymaga niepustej macierzy kwadratowej, otrzymano {arr.shape}")
    arr = arr.astype(float)
    if not np.all(np.isfinite(arr)):
        raise ValidationError("Macierz ocen zawiera wartości nieskończone lub NaN")
    return arr


def _complete(sub: np.ndarray):
    """Optymalne dokończenie przypisania na podmacierzy: (wartość, wiersze, kolumny)."""
    if sub.size == 0:
        return 0.0, np.empty(0, dtype=int), np.empty(0, dtype=int)
    rows, cols = linear_sum_assignment(sub, maximize=True)
    return float(sub[rows, cols].sum()), rows, cols


def max_assignment(score):
    """Permutacja σ maksymalizująca Σ_i score[i, σ(i)].

    Remisy rozstrzygane są na korzyść leksykograficznie najmniejszej
    tablicy obrazów: dla kolejnych wierszy wybierana jest najmniejsza
    kolumna, dla której dokończenie przypisania wciąż osiąga optimum.
    Za remis uznawana jest tylko różnica rzędu błędu zaokrągleń,
    `ASSIGNMENT_TIE_TOL · max(1, max|score|)`.

    Kolumny, których nie da się dokończyć do optimum nawet przy
    sumie maksimów pozostałych wierszy, są pomijane bez wywołania
    solvera. W najgorszym przypadku (wiele prawie-remisów) przejście
    kosztuje O(M²) rozwiązań podproblemów, więc dla M rzędu setek
    z gęstymi remisami czas rośnie szybko.

    Args:
        score: Rzeczywista, skończona macierz M×M.

    Returns:
        tuple: (σ, wartość maksymalna).

    Raises:
        ValidationError: Macierz niekwadratowa, zespolona lub nieskończona.
    """
    s = _validate_score(score)
    m = s.shape[0]
    rows, cols = linear_sum_assignment(s, maximize=True)
    best = float(s[rows, cols].sum())
    slack = ASSIGNMENT_TIE_TOL * max(1.0, float(np.abs(s).max()))

    current = dict(zip(rows.tolist(), cols.tolist()))
    chosen = []
    used = set()
    fixed_value = 0.0
    for i in range(m):
        free_cols = [j for j in range(m) if j not in used]
        rest_rows = list(range(i + 1, m))
        rest_bound = float(s[np.ix_(rest_rows, free_cols)].max(axis=1).sum()) if rest_rows else 0.0
        j = current[i]
        for cand in free_cols:
            if cand >= current[i]:
                break
            if fixed_value + s[i, cand] + rest_bound < best - slack:
                continue
            rest_cols = [c for c in free_cols if c != cand]
            value, r2, c2 = _complete(s[np.ix_(rest_rows, rest_cols)])
            if fixed_value + s[i, cand] + value >= best - slack:
                for rr, cc in zip(r2.tolist(), c2.tolist()):
                    current[rest_rows[rr]] = rest_cols[cc]
                j = cand
                break
        chosen.append(j)
        used.add(j)
        fixed_value += s[i, j]

    sigma = Permutation(tuple(chosen))
    value = float(s[np.arange(m), np.asarray(chosen)].sum())
    logger.debug("🔢 Przypisanie M=%d: wartość %.6g", m, value)
    return sigma, value
