"""Moduł odpowiedzialny za wykres przeglądu współczynnika chirp.

Krzywa λ_min(ψ) na siatce ψ z pionową linią prawdziwego ψ0 (jeśli znane).
Minimum krzywej wskazuje estymowany współczynnik chirp.
"""

import numpy as np
import plotly.graph_objects as go

from .utils import utworz_pusty_wykres, validate_dataframe
from config import KOLORY_WYNIKOW, TEMPLATE_PLOTLY, WYSOKOSC_WYKRESU_STANDARD


def generate_sweep_chart(df, psi0=None, log_scale=True):
    """Generuje wykres liniowy λ_min w funkcji ψ.

    Args:
        df (pd.DataFrame): Tabela z kolumnami 'psi' i 'lambda_min'.
        psi0 (float | None): Prawdziwy współczynnik chirp do zaznaczenia.
        log_scale (bool): Czy oś Y ma być logarytmiczna.

    Returns:
        go.Figure: Obiekt wykresu Plotly lub pusty wykres z komunikatem.
    """
    valid, msg = validate_dataframe(df, ['psi', 'lambda_min'], numeric_columns=['lambda_min'])
    if not valid:
        return utworz_pusty_wykres(msg)

    try:
        y = df['lambda_min'].to_numpy(dtype=float)
        if log_scale:
            dodatnie = y[y > 0]
            floor = dodatnie.min() * 1e-3 if dodatnie.size else 1e-17
            y = np.maximum(y, floor)

        fig = go.Figure()
        fig.add_trace(go.Scatter(
            x=df['psi'],
            y=y,
            mode='lines+markers',
            name='λ_min(ψ)',
            line=dict(color=KOLORY_WYNIKOW['krzywa'])
        ))

        k = int(np.argmin(df['lambda_min'].to_numpy(dtype=float)))
        fig.add_vline(
            x=float(df['psi'].iloc[k]),
            line_dash="dot",
            line_color=KOLORY_WYNIKOW['automorfizm'],
            annotation_text=f"argmin ψ = {float(df['psi'].iloc[k]):.4f}",
            annotation_position="top left"
        )
        if psi0 is not None:
            fig.add_vline(
                x=psi0,
                line_dash="dash",
                line_color=KOLORY_WYNIKOW['prawda'],
                annotation_text=f"ψ0 = {psi0:g}",
                annotation_position="top right"
            )

        fig.update_layout(
            title="Przegląd współczynnika chirp",
            xaxis_title="ψ",
            yaxis_title="λ_min",
            yaxis_type="log" if log_scale else "linear",
            template=TEMPLATE_PLOTLY,
            height=WYSOKOSC_WYKRESU_STANDARD,
            hovermode='x unified'
        )
        return fig

    except Exception as e:
        return utworz_pusty_wykres(f"Błąd: {e}")
