# /config.py

"""Moduł konfiguracyjny biblioteki wyboru grup symetrii.

Ten plik centralizuje wszystkie tolerancje numeryczne, limity, domyślne
parametry eksperymentów oraz ustawienia wykresów używane w różnych
częściach projektu. Zmiana np. tolerancji zera czy siatki przeglądu chirp
wymaga modyfikacji tylko w jednym miejscu.

Zawiera konfiguracje dla:
-   Tolerancji numerycznych (certyfikat zera, hermitowskość, degeneracja).
-   Limitów obliczeń na grupach permutacji.
-   Domyślnych parametrów eksperymentów (grafy, chirp, benchmark).
-   Logowania (plik, poziom) nadpisywanego przez zmienne środowiskowe.
-   Kolorów i szablonu wykresów Plotly.
"""

import os
from dotenv import load_dotenv

load_dotenv()

# =============================================================================
# TOLERANCJE NUMERYCZNE
# =============================================================================
# Jedna, współdzielona tolerancja zera (względna):
#   certyfikat:  λ_min ≤ ZERO_TOL · ‖R‖_F²
#   komutacja:   ‖[P_σ, R]‖_F ≤ ZERO_TOL · ‖R‖_F
ZERO_TOL = 1e-10

# ‖H − H*‖_F ≤ HERMITIAN_TOL · max(1, ‖H‖_F)
HERMITIAN_TOL = 1e-9

# Dolna granica ujemnych wartości własnych m: −PSD_TOL · ‖m‖_F
PSD_TOL = 1e-10

# Szerokość klastra zdegenerowanego λ_min
DEGENERACY_GAP = 1e-12

# Deflacja: element usuwany, gdy ‖E'‖ < DROP_TOL · ‖E‖
DROP_TOL = 1e-8

# Nakładanie ⟨A*, P_σ⟩_F poniżej tej wartości oznacza odrzucenie
OVERLAP_TOL = 1e-12

# Wartości orbit uznawane za równe (kolizje w eksperymencie generatywnym)
COLLISION_TOL = 1e-9

# Rozstrzyganie remisów w przypisaniu (względnie do max|score|)
ASSIGNMENT_TIE_TOL = 1e-12

# =============================================================================
# LIMITY OBLICZEŃ NA GRUPACH
# =============================================================================
CLOSURE_CAP = int(os.getenv("DC_CLOSURE_CAP", "10080"))
ORACLE_MAX_DEGREE = 8
GENERATIVE_MAX_DEGREE = 6
ORACLE_CHUNK = 5040  # Ile permutacji sprawdzamy naraz (wektorowo)

# =============================================================================
# PARAMETRY EKSPERYMENTÓW
# =============================================================================
DEFAULT_BETA = 1.0
DEFAULT_SEED = 12345

# Sześć grafów badania automorfizmów i oczekiwane rzędy |Aut|
GRAPH_LABELS = ["C6", "K4", "P6", "prism", "K3", "S5"]
GRAPH_AUT_ORDERS = {
    "C6": 12,
    "K4": 24,
    "P6": 2,
    "prism": 12,
    "K3": 6,
    "S5": 24,
}

# Margines separacji: każdy nie-automorfizm ma δ ≥ SEPARATION_MARGIN
SEPARATION_MARGIN = 1e-3

# Chirp: widmo log-jednostajne w [CHIRP_SPECTRUM_LOW, CHIRP_SPECTRUM_HIGH]
CHIRP_M = 64
CHIRP_PSI0 = 0.15
CHIRP_SNR_DB = 10.0
CHIRP_SPECTRUM_LOW = 0.5
CHIRP_SPECTRUM_HIGH = 5.0
CHIRP_FLATNESS_TOL = 1e-9
SWEEP_GRID = (0.0, 0.3, 61)

# Benchmark
BENCH_M_VALUES = [4, 5, 6, 7, 16, 64, 256]
BENCH_D = 5
BENCH_REPEATS = 3
BENCH_ORACLE_MAX_DEGREE = 7

# =============================================================================
# LOGOWANIE
# =============================================================================
# Pusty DC_LOG_FILE oznacza brak pliku logu (tylko stderr)
LOG_FILE = os.getenv("DC_LOG_FILE", "")
LOG_LEVEL = os.getenv("DC_LOG_LEVEL", "INFO").upper()
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LOG_MAX_BYTES = 5 * 1024 * 1024
LOG_BACKUP_COUNT = 3

# =============================================================================
# USTAWIENIA WYKRESÓW
# =============================================================================
TEMPLATE_PLOTLY = "plotly_white"
WYSOKOSC_WYKRESU_STANDARD = 600
WYSOKOSC_WYKRESU_MALY = 500

KOLORY_WYNIKOW = {
    'automorfizm': '#2ca02c',      # Zielony
    'nie-automorfizm': '#d62728',  # Czerwony
    'krzywa': '#1f77b4',           # Niebieski
    'prawda': '#FFA500',           # Pomarańczowy
}

KOLORY_METOD = {
    'dc-gevp': '#1f77b4',
    'library-search': '#FFA500',
    'oracle': '#8B0000',
}
