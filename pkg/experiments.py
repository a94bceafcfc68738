"""Moduł eksperymentów: automorfizmy grafów, przegląd chirp i benchmark.

Zawiera:
- Konstruktory sześciu grafów testowych (networkx), laplasjan oraz
  kowariancje dyfuzyjne e^{−βL} i (I + L)^{−1}.
- Badanie automorfizmów: residua δ katalogu standardowego dla kowariancji
  grafu, porównane z wyrocznią Aut(R).
- Kowariancję chirp U(ψ0)·C·U(ψ0)* + σ²I (populacyjną lub próbkową)
  i przegląd λ_min(ψ) po siatce.
- Benchmark czasów: DC-GEVP, przeszukiwanie biblioteki generatorów
  i wyrocznia wyczerpująca.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass

import networkx as nx
import numpy as np
import pandas as pd
import scipy.linalg
from numpy.typing import NDArray

from basis_catalog import GeneratorBasis, chirp_basis, standard_catalog, user_basis
from config import (
    BENCH_D,
    BENCH_M_VALUES,
    BENCH_ORACLE_MAX_DEGREE,
    BENCH_REPEATS,
    CHIRP_FLATNESS_TOL,
    CHIRP_SPECTRUM_HIGH,
    CHIRP_SPECTRUM_LOW,
    DEFAULT_BETA,
    DEFAULT_SEED,
    ORACLE_MAX_DEGREE,
    SEPARATION_MARGIN,
    SWEEP_GRID,
    ZERO_TOL,
)
from dc_gevp import GevpSolution, residual, select_generator
from errors import DegreeCapError, ValidationError
from matrix_core import as_hermitian, matrix_exp_neg, shifted_inverse
from perm_group import Permutation, aut_bruteforce, perm_matrix

logger = logging.getLogger(__name__)

_GRAPH_BUILDERS = {
    "C6": lambda: nx.cycle_graph(6),
    "K4": lambda: nx.complete_graph(4),
    "P6": lambda: nx.path_graph(6),
    "prism": lambda: nx.circular_ladder_graph(3),
    "K3": lambda: nx.complete_graph(3),
    # Centrum gwiazdy na ostatnim wierzchołku, liście 0..3
    "S5": lambda: nx.relabel_nodes(nx.star_graph(4), {i: (i - 1) % 5 for i in range(5)}),
}
_GRAPH_ALIASES = {"S5-star": "S5", "PRISM": "prism"}


# =============================================================================
# GRAFY
# =============================================================================
def make_graph(label: str) -> nx.Graph:
    """Buduje jeden z sześciu grafów testowych.

    prism to dwa trójkąty połączone skojarzeniem doskonałym, S5 to gwiazda
    z jednym centrum i czterema liśćmi.

    Raises:
        ValidationError: Nieznana etykieta.
    """
    key = _GRAPH_ALIASES.get(label, label)
    if key not in _GRAPH_BUILDERS:
        raise ValidationError(f"Nieznany graf '{label}'; dostępne: {', '.join(_GRAPH_BUILDERS)}")
    g = _GRAPH_BUILDERS[key]()
    g.graph["label"] = key
    return g


def laplacian(g: nx.Graph) -> NDArray:
    """L = D − A w porządku posortowanych wierzchołków."""
    if nx.number_of_selfloops(g) > 0:
        raise ValidationError("Graf zawiera pętle własne")
    nodes = sorted(g.nodes())
    return nx.laplacian_matrix(g, nodelist=nodes).toarray().astype(float)


def diffusion_covariance(g: nx.Graph, beta: float = DEFAULT_BETA) -> NDArray:
    """Kowariancja dyfuzyjna R = e^{−βL}."""
    if not beta > 0:
        raise ValidationError(f"β musi być dodatnie, otrzymano {beta}")
    return matrix_exp_neg(laplacian(g), beta)


def resolvent_covariance(g: nx.Graph) -> NDArray:
    """Kowariancja R = (I + L)^{−1} (przykład sekwencyjny na C6)."""
    return shifted_inverse(laplacian(g))


# =============================================================================
# BADANIE AUTOMORFIZMÓW
# =============================================================================
@dataclass(frozen=True)
class GraphAutResult:
    """Wynik badania automorfizmów jednego grafu.

    Attributes:
        label (str): Etykieta grafu.
        beta (float): Parametr dyfuzji.
        aut_order (int): |Aut(R)| z wyroczni.
        table (pd.DataFrame): Kolumny generator, permutation, delta,
            is_automorphism (δ ≤ tolerancja zera), oracle (σ ∈ Aut(R)).
        selection (GevpSolution): Wynik DC-GEVP na katalogu.
        min_delta_generator (str): Etykieta generatora o najmniejszym δ.
    """

    label: str
    beta: float
    aut_order: int
    table: pd.DataFrame
    selection: GevpSolution
    min_delta_generator: str

    @property
    def classification_agrees(self) -> bool:
        return bool((self.table["is_automorphism"] == self.table["oracle"]).all())

    @property
    def min_delta_is_automorphism(self) -> bool:
        row = self.table.loc[self.table["generator"] == self.min_delta_generator]
        return bool(row["oracle"].iloc[0])

    @property
    def separation_margin(self) -> float:
        """Najmniejsze δ wśród nie-automorfizmów (inf, gdy ich brak)."""
        non_aut = self.table.loc[~self.table["oracle"], "delta"]
        return float(non_aut.min()) if len(non_aut) else float("inf")


def graph_aut_experiment(g: nx.Graph, beta: float = DEFAULT_BETA, catalog: GeneratorBasis | None = None) -> GraphAutResult:
    """Residua katalogu standardowego względem kowariancji dyfuzyjnej grafu.

    Każdy generator jest klasyfikowany jako automorfizm, gdy δ ≤ ZERO_TOL,
    a klasyfikacja jest porównywana z przynależnością do Aut(R) z wyroczni.
    Dodatkowo uruchamiany jest DC-GEVP na całym katalogu.

    Args:
        g (nx.Graph): Graf z co najwyżej 8 wierzchołkami.
        beta (float): Parametr dyfuzji β > 0.
        catalog (GeneratorBasis | None): Baza; domyślnie standard_catalog(M).

    Returns:
        GraphAutResult: Tabela residuów i diagnostyka.
    """
    m = g.number_of_nodes()
    if m > ORACLE_MAX_DEGREE:
        raise DegreeCapError(f"Graf ma {m} wierzchołków; wyrocznia obsługuje M ≤ {ORACLE_MAX_DEGREE}")
    label = g.graph.get("label", f"graph{m}")
    r = diffusion_covariance(g, beta)
    basis = catalog if catalog is not None else standard_catalog(m)
    aut = aut_bruteforce(r)

    rows = []
    for lab, elem, sigma in zip(basis.labels, basis.elements, basis.perms):
        delta = residual(elem, r)
        rows.append({
            "generator": lab,
            "permutation": sigma.cycle_notation() if sigma is not None else "",
            "delta": delta,
            "is_automorphism": delta <= ZERO_TOL,
            "oracle": bool(sigma is not None and sigma in aut),
        })
    table = pd.DataFrame(rows, columns=["generator", "permutation", "delta", "is_automorphism", "oracle"])
    best = str(table.loc[table["delta"].idxmin(), "generator"])
    selection = select_generator(r, basis)

    result = GraphAutResult(label, beta, aut.order, table, selection, best)
    if not result.classification_agrees:
        logger.error("❌ %s: klasyfikacja δ nie zgadza się z wyrocznią", label)
    if not result.min_delta_is_automorphism:
        logger.error("❌ %s: generator o najmniejszym δ (%s) nie jest automorfizmem", label, best)
    if result.separation_margin < SEPARATION_MARGIN:
        logger.warning("⚠️ %s: margines separacji %.3e < %.0e", label, result.separation_margin, SEPARATION_MARGIN)
    logger.info("📊 %s: |Aut| = %d, λ_min = %.3e", label, aut.order, selection.lambda_min)
    return result


# =============================================================================
# CHIRP
# =============================================================================
def default_chirp_spectrum(m: int, seed: int = DEFAULT_SEED) -> NDArray:
    """Widmo log-jednostajne w [0.5, 5] z ustalonym ziarnem."""
    rng = np.random.default_rng(seed)
    return np.exp(rng.uniform(np.log(CHIRP_SPECTRUM_LOW), np.log(CHIRP_SPECTRUM_HIGH), size=m))


def dechirp_diagonal(m: int, psi: float) -> NDArray:
    """Przekątna U(ψ) = diag(e^{−jπψn²})."""
    n = np.arange(m, dtype=float)
    return np.exp(-1j * np.pi * psi * n ** 2)


def chirp_covariance(
    m: int,
    psi0: float,
    spectrum=None,
    snr_db: float | None = None,
    snapshots: int | None = None,
    seed: int = DEFAULT_SEED,
) -> NDArray:
    """Kowariancja chirp R = U(ψ0)·C·U(ψ0)* + σ²I.

    C jest macierzą cyrkulantną o zadanym widmie (diagonalizowaną przez DFT).
    σ² = mean(widmo) / 10^{snr_db/10}; bez snr_db składnik szumu jest pomijany.
    Gdy podano `snapshots`, zwracana jest kowariancja próbkowa z tylu
    zespolonych gaussowskich realizacji.

    Raises:
        ValidationError: Widmo niedodatnie, złej długości lub płaskie.
    """
    if m < 2:
        raise ValidationError(f"M musi być ≥ 2, otrzymano {m}")
    s = default_chirp_spectrum(m, seed) if spectrum is None else np.asarray(spectrum, dtype=float)
    if s.shape != (m,):
        raise ValidationError(f"Widmo ma długość {s.shape}, oczekiwano {m}")
    if np.any(s <= 0) or not np.all(np.isfinite(s)):
        raise ValidationError("Widmo musi być skończone i dodatnie")
    if np.ptp(s) <= CHIRP_FLATNESS_TOL * np.max(s):
        raise ValidationError("Widmo płaskie: R komutuje z każdym generatorem i przegląd traci minimum")

    f = scipy.linalg.dft(m, scale="sqrtn")
    c = f.conj().T @ (s[:, None] * f)
    u = dechirp_diagonal(m, psi0)
    r = u[:, None] * c * u.conj()[None, :]
    if snr_db is not None:
        r = r + (np.mean(s) / 10 ** (snr_db / 10)) * np.eye(m)
    r = (r + r.conj().T) / 2

    if snapshots is not None:
        if snapshots < 1:
            raise ValidationError(f"Liczba realizacji musi być ≥ 1, otrzymano {snapshots}")
        rng = np.random.default_rng(seed)
        chol = scipy.linalg.cholesky(r, lower=True)
        z = (rng.standard_normal((m, snapshots)) + 1j * rng.standard_normal((m, snapshots))) / np.sqrt(2)
        x = chol @ z
        r = x @ x.conj().T / snapshots
        r = (r + r.conj().T) / 2
    return r


@dataclass(frozen=True)
class SweepResult:
    grid: NDArray
    lambda_min: NDArray
    argmin_psi: float

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"psi": self.grid, "lambda_min": self.lambda_min})


def chirp_sweep(r, psi_lo: float = SWEEP_GRID[0], psi_hi: float = SWEEP_GRID[1], steps: int = SWEEP_GRID[2]) -> SweepResult:
    """Przegląd λ_min(ψ) dla jednoelementowej bazy {B(ψ)}.

    Raises:
        ValidationError: steps < 2.
    """
    if steps < 2:
        raise ValidationError(f"Siatka wymaga co najmniej 2 punktów, otrzymano {steps}")
    r = as_hermitian(r, "R")
    m = r.shape[0]
    grid = np.linspace(psi_lo, psi_hi, steps)
    values = np.array([select_generator(r, chirp_basis(m, psi)).lambda_min for psi in grid])
    k = int(np.argmin(values))
    logger.info("📊 Przegląd chirp: minimum λ = %.3e przy ψ = %.4f", values[k], grid[k])
    return SweepResult(grid, values, float(grid[k]))


# =============================================================================
# BENCHMARK
# =============================================================================
def _bench_covariance(m: int, rng) -> NDArray:
    w = rng.standard_normal((m, m))
    return w @ w.T / m


def bench_catalog(m: int, d: int, rng) -> GeneratorBasis:
    """d-elementowy katalog permutacyjny: standardowy, uzupełniony losowymi permutacjami."""
    base = standard_catalog(m)
    elements = list(base.elements[:d])
    labels = list(base.labels[:d])
    seen = {p for p in base.perms[:d]}
    while len(elements) < d:
        sigma = Permutation(tuple(int(i) for i in rng.permutation(m)))
        if sigma.is_identity() or sigma in seen:
            continue
        seen.add(sigma)
        elements.append(perm_matrix(sigma))
        labels.append(f"random {sigma.cycle_notation()}")
    return user_basis(elements, labels)


def _median_time(fn, repeats: int) -> float:
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return float(np.median(times))


def benchmark(m_values=None, d: int = BENCH_D, repeats: int = BENCH_REPEATS, seed: int = DEFAULT_SEED) -> pd.DataFrame:
    """Mediany czasów dla DC-GEVP, przeszukiwania biblioteki i wyroczni.

    Wyrocznia jest mierzona tylko dla M ≤ 7.

    Returns:
        pd.DataFrame: Kolumny M, method, median_s.
    """
    m_values = BENCH_M_VALUES if m_values is None else list(m_values)
    rng = np.random.default_rng(seed)
    rows = []
    for m in m_values:
        m = int(m)
        r = _bench_covariance(m, rng)
        basis = bench_catalog(m, d, rng)
        rows.append({"M": m, "method": "dc-gevp", "median_s": _median_time(lambda: select_generator(r, basis), repeats)})
        rows.append({
            "M": m,
            "method": "library-search",
            "median_s": _median_time(lambda: [residual(e, r) for e in basis.elements], repeats),
        })
        if m <= BENCH_ORACLE_MAX_DEGREE:
            rows.append({"M": m, "method": "oracle", "median_s": _median_time(lambda: aut_bruteforce(r), repeats)})
        logger.info("⏱️ M=%d zmierzone", m)
    return pd.DataFrame(rows, columns=["M", "method", "median_s"])
