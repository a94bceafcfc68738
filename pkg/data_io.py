"""Moduł odpowiedzialny za wczytywanie i zapisywanie plików wymiany.

Zawiera funkcje do:
- Zapisu i odczytu macierzy w formacie tekstowym
  (`M N complex|real`, potem M wierszy po N wpisów; wpis zespolony to para
  tokenów `a b`, wartości z 17 cyframi znaczącymi).
- Zapisu i odczytu grup (stopień w pierwszym wierszu, potem jedna tablica
  obrazów generatora na wiersz) oraz list permutacji.
- Odczytu manifestu bazy użytkownika (etykieta i ścieżka pliku macierzy).
- Formatowania tabel wyników jako TSV z nagłówkiem poprzedzonym `#`.
- Atomowego zapisu plików (plik tymczasowy + os.replace).
"""

import logging
import os
import tempfile

import numpy as np
import pandas as pd

from basis_catalog import GeneratorBasis, user_basis
from errors import ValidationError
from perm_group import Permutation, PermutationGroup, closure

logger = logging.getLogger(__name__)


# =============================================================================
# ZAPIS ATOMOWY
# =============================================================================
def atomic_write_text(path, text: str) -> str:
    """Zapisuje tekst do pliku tymczasowego w tym samym katalogu i podmienia cel.

    Returns:
        str: Ścieżka zapisanego pliku.
    """
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(prefix=".tmp_", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise
    logger.debug("Zapisano plik %s", path)
    return path


def _read_lines(path) -> list[str]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read().splitlines()
    except OSError as err:
        raise ValidationError(f"Nie można odczytać pliku {path}: {err}") from err


# =============================================================================
# MACIERZE
# =============================================================================
def format_matrix(a) -> str:
    a = np.asarray(a)
    if a.ndim != 2:
        raise ValidationError(f"Oczekiwano macierzy 2D, otrzymano kształt {a.shape}")
    is_complex = np.iscomplexobj(a)
    lines = [f"{a.shape[0]} {a.shape[1]} {'complex' if is_complex else 'real'}"]
    for row in a:
        if is_complex:
            tokens = [f"{v.real:.17g} {v.imag:.17g}" for v in row]
        else:
            tokens = [f"{float(v):.17g}" for v in row]
        lines.append(" ".join(tokens))
    return "\n".join(lines) + "\n"


def write_matrix(path, a) -> str:
    """Zapisuje macierz w formacie tekstowym (atomowo)."""
    return atomic_write_text(path, format_matrix(a))


def parse_matrix(text: str, source: str = "<tekst>") -> np.ndarray:
    """Parsuje macierz z formatu tekstowego.

    Raises:
        ValidationError: Zły nagłówek, zła liczba wierszy lub wpisów,
            niepoprawne liczby.
    """
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValidationError(f"{source}: pusty plik macierzy")
    header = lines[0].split()
    if len(header) != 3 or header[2] not in ("real", "complex"):
        raise ValidationError(f"{source}: nagłówek musi mieć postać 'M N complex|real', otrzymano '{lines[0]}'")
    try:
        rows, cols = int(header[0]), int(header[1])
    except ValueError as err:
        raise ValidationError(f"{source}: niepoprawne wymiary w nagłówku '{lines[0]}'") from err
    if rows < 1 or cols < 1:
        raise ValidationError(f"{source}: wymiary muszą być dodatnie")
    is_complex = header[2] == "complex"
    body = lines[1:]
    if len(body) != rows:
        raise ValidationError(f"{source}: oczekiwano {rows} wierszy danych, otrzymano {len(body)}")

    per_row = 2 * cols if is_complex else cols
    out = np.zeros((rows, cols), dtype=complex if is_complex else float)
    for i, line in enumerate(body):
        tokens = line.split()
        if len(tokens) != per_row:
            raise ValidationError(f"{source}: wiersz {i + 1} ma {len(tokens)} wpisów, oczekiwano {per_row}")
        try:
            values = np.array([float(t) for t in tokens])
        except ValueError as err:
            raise ValidationError(f"{source}: niepoprawna liczba w wierszu {i + 1}") from err
        out[i] = values[0::2] + 1j * values[1::2] if is_complex else values
    return out


def read_matrix(path) -> np.ndarray:
    return parse_matrix("\n".join(_read_lines(path)), source=os.fspath(path))


# =============================================================================
# PERMUTACJE I GRUPY
# =============================================================================
def parse_permutations(text: str, source: str = "<tekst>"):
    """Zwraca (stopień, lista permutacji) z formatu pliku grup.

    Wiersze identyczności są pomijane z ostrzeżeniem.
    """
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValidationError(f"{source}: pusty plik grupy")
    try:
        degree = int(lines[0].strip())
    except ValueError as err:
        raise ValidationError(f"{source}: pierwszy wiersz musi zawierać stopień") from err
    perms = []
    for k, line in enumerate(lines[1:], start=2):
        try:
            images = [int(t) for t in line.split()]
        except ValueError as err:
            raise ValidationError(f"{source}: wiersz {k} nie jest tablicą obrazów") from err
        if len(images) != degree:
            raise ValidationError(f"{source}: wiersz {k} ma {len(images)} obrazów, oczekiwano {degree}")
        sigma = Permutation(tuple(images))
        if sigma.is_identity():
            logger.warning("⚠️ %s: wiersz %d to identyczność, pomijam", source, k)
            continue
        perms.append(sigma)
    return degree, perms


def read_group(path) -> PermutationGroup:
    """Wczytuje generatory i zwraca ich domknięcie."""
    degree, gens = parse_permutations("\n".join(_read_lines(path)), source=os.fspath(path))
    return closure(degree, gens)


def format_group(group: PermutationGroup) -> str:
    lines = [str(group.degree)]
    lines.extend(str(g) for g in group.generators)
    return "\n".join(lines) + "\n"


def write_group(path, group: PermutationGroup) -> str:
    return atomic_write_text(path, format_group(group))


def read_permutations(path):
    return parse_permutations("\n".join(_read_lines(path)), source=os.fspath(path))


# =============================================================================
# MANIFEST BAZY UŻYTKOWNIKA
# =============================================================================
def read_manifest(path) -> GeneratorBasis:
    """Wczytuje bazę z manifestu: w każdym wierszu etykieta i ścieżka pliku macierzy.

    Ścieżki względne są rozwiązywane względem katalogu manifestu.
    """
    path = os.fspath(path)
    base_dir = os.path.dirname(os.path.abspath(path))
    labels, elements = [], []
    for k, line in enumerate(_read_lines(path), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValidationError(f"{path}: wiersz {k} musi mieć postać 'etykieta ścieżka'")
        label, rel = parts
        elements.append(read_matrix(os.path.join(base_dir, rel)))
        labels.append(label)
    if not elements:
        raise ValidationError(f"{path}: manifest nie zawiera żadnych elementów")
    return user_basis(elements, labels)


# =============================================================================
# TABELE
# =============================================================================
def frame_to_tsv(df: pd.DataFrame, float_format: str = "%.10g") -> str:
    """Tabela TSV z nagłówkiem `# kol1<TAB>kol2...`."""
    header = "# " + "\t".join(str(c) for c in df.columns)
    body = df.to_csv(sep="\t", header=False, index=False, float_format=float_format, lineterminator="\n")
    return header + "\n" + body


def write_tsv(path, df: pd.DataFrame) -> str:
    return atomic_write_text(path, frame_to_tsv(df))


def read_tsv(path) -> pd.DataFrame:
    """Odczyt tabeli zapisanej przez `write_tsv`."""
    lines = _read_lines(path)
    if not lines or not lines[0].startswith("#"):
        raise ValidationError(f"{path}: brak nagłówka '#'")
    columns = lines[0][1:].strip().split("\t")
    rows = [ln.split("\t") for ln in lines[1:] if ln]
    frame = pd.DataFrame(rows, columns=columns)
    for col in frame.columns:
        converted = pd.to_numeric(frame[col], errors="coerce")
        if converted.notna().all():
            frame[col] = converted
    return frame
