"""Moduł zawierający funkcje pomocnicze dla modułów wykresów.

Ten plik gromadzi wspólne narzędzia wykorzystywane przez moduły
generujące wykresy: pusty wykres z komunikatem, walidację ramek danych
oraz zapis figury do pliku.
"""

import os

import numpy as np
import pandas as pd
import plotly.graph_objects as go

from config import TEMPLATE_PLOTLY
from errors import ValidationError


def utworz_pusty_wykres(tytul="Brak danych do wyświetlenia"):
    """Tworzy pusty obiekt wykresu Plotly z wyśrodkowanym komunikatem.

    Używany w sytuacjach, gdy brakuje danych do wizualizacji lub wystąpił
    błąd, dzięki czemu generatory wykresów nigdy nie przerywają raportu.

    Args:
        tytul (str, optional): Tekst wyświetlany jako tytuł pustego wykresu.

    Returns:
        go.Figure: Pusty obiekt `plotly.graph_objects.Figure` z ukrytymi osiami.
    """
    return go.Figure().update_layout(
        title=tytul,
        xaxis={'visible': False},
        yaxis={'visible': False},
        template=TEMPLATE_PLOTLY
    )


def validate_dataframe(df, required_columns, numeric_columns=()):
    """Sprawdza tabelę wyników przed rysowaniem.

    Args:
        df (pd.DataFrame): Tabela wyników (residua, przegląd, czasy).
        required_columns (list[str]): Kolumny, bez których wykres nie powstanie.
        numeric_columns (Iterable[str]): Kolumny, które muszą mieć choć jedną
            skończoną wartość liczbową (oś logarytmiczna).

    Returns:
        tuple[bool, str]: Flaga poprawności i komunikat dla pustego wykresu.
    """
    if df is None or len(df) == 0:
        return False, "Brak wyników do narysowania"

    brakujace = [kol for kol in required_columns if kol not in df.columns]
    if brakujace:
        return False, "Brakujące kolumny: " + ", ".join(brakujace)

    for kol in numeric_columns:
        wartosci = pd.to_numeric(df[kol], errors="coerce").to_numpy(dtype=float)
        if not np.isfinite(wartosci).any():
            return False, f"Kolumna '{kol}' nie zawiera skończonych wartości"

    return True, ""


def zapisz_wykres(fig, path, width=1000, height=600):
    """Zapisuje figurę Plotly do pliku.

    Rozszerzenie `.html` zapisywane jest przez `write_html` (Plotly.js z CDN),
    pozostałe (`.svg`, `.png`, `.pdf`) przez `write_image` z pakietem `kaleido`.

    Args:
        fig (go.Figure): Figura do zapisania.
        path (str): Ścieżka docelowa.
        width (int): Szerokość grafiki statycznej w pikselach.
        height (int): Wysokość grafiki statycznej w pikselach.

    Returns:
        str: Ścieżka zapisanego pliku.

    Raises:
        ValidationError: Nieobsługiwane rozszerzenie pliku lub błąd eksportu
            statycznego (brak `kaleido` albo przeglądarki).
    """
    ext = os.path.splitext(os.fspath(path))[1].lower()
    if ext in ('.html', '.htm'):
        fig.write_html(path, include_plotlyjs='cdn', full_html=True)
    elif ext in ('.svg', '.png', '.pdf', '.jpg', '.jpeg', '.webp'):
        try:
            fig.write_image(path, width=width, height=height)
        except (ValueError, RuntimeError, ImportError) as err:
            raise ValidationError(f"Eksport wykresu do '{ext}' nie powiódł się (kaleido): {err}") from err
    else:
        raise ValidationError(f"Nieobsługiwany format wykresu '{ext}'; użyj .html, .svg lub .png")
    return os.fspath(path)
