"""Moduł odpowiedzialny za wykres residuów komutacji katalogu generatorów.

Wykres słupkowy przedstawia δ(P_σ, R) dla każdego generatora katalogu
standardowego. Słupki automorfizmów (według wyroczni) są zielone,
pozostałe czerwone; oś Y jest logarytmiczna, więc widoczna jest
separacja kilku rzędów wielkości między obiema grupami.
"""

import numpy as np
import plotly.graph_objects as go

from .utils import utworz_pusty_wykres, validate_dataframe
from config import KOLORY_WYNIKOW, TEMPLATE_PLOTLY, WYSOKOSC_WYKRESU_MALY

# Dolne ograniczenie dla zerowych δ na osi logarytmicznej
_LOG_FLOOR = 1e-17


def generate_residual_chart(df, title="Residua komutacji generatorów"):
    """Generuje wykres słupkowy residuów δ dla tabeli badania automorfizmów.

    Args:
        df (pd.DataFrame): Tabela z kolumnami 'generator', 'delta', 'oracle'.
        title (str): Tytuł wykresu (zwykle etykieta grafu).

    Returns:
        go.Figure: Obiekt wykresu Plotly. W przypadku braku danych lub
            błędu zwraca pusty wykres z komunikatem.
    """
    valid, msg = validate_dataframe(df, ['generator', 'delta', 'oracle'], numeric_columns=['delta'])
    if not valid:
        return utworz_pusty_wykres(msg)

    try:
        fig = go.Figure()
        delta = np.maximum(df['delta'].to_numpy(dtype=float), _LOG_FLOOR)

        for is_aut, nazwa, kolor_key in [
            (True, 'Automorfizm', 'automorfizm'),
            (False, 'Nie-automorfizm', 'nie-automorfizm'),
        ]:
            maska = (df['oracle'] == is_aut).to_numpy()
            if not maska.any():
                continue
            fig.add_trace(go.Bar(
                x=df['generator'][maska],
                y=delta[maska],
                name=nazwa,
                marker_color=KOLORY_WYNIKOW[kolor_key],
                hovertemplate='%{x}<br>δ = %{y:.3e}<extra></extra>'
            ))

        fig.update_layout(
            title=title,
            xaxis_title="Generator",
            yaxis_title="δ(P, R)",
            yaxis_type="log",
            legend_title="Wyrocznia",
            template=TEMPLATE_PLOTLY,
            height=WYSOKOSC_WYKRESU_MALY
        )
        return fig

    except Exception as e:
        return utworz_pusty_wykres(f"Błąd: {e}")
