"""Moduł odpowiedzialny za wykres porównania czasów wykonania."""

import plotly.graph_objects as go

from .utils import utworz_pusty_wykres, validate_dataframe
from config import KOLORY_METOD, TEMPLATE_PLOTLY, WYSOKOSC_WYKRESU_STANDARD


def generate_benchmark_chart(df):
    """Generuje wykres median czasów (oś log-log) dla każdej metody.

    Args:
        df (pd.DataFrame): Tabela z kolumnami 'M', 'method', 'median_s'.

    Returns:
        go.Figure: Obiekt wykresu Plotly lub pusty wykres z komunikatem.
    """
    valid, msg = validate_dataframe(df, ['M', 'method', 'median_s'], numeric_columns=['median_s'])
    if not valid:
        return utworz_pusty_wykres(msg)

    try:
        fig = go.Figure()
        for metoda, grupa in df.groupby('method', sort=False):
            grupa = grupa.sort_values('M')
            fig.add_trace(go.Scatter(
                x=grupa['M'],
                y=grupa['median_s'],
                mode='lines+markers',
                name=metoda,
                line=dict(color=KOLORY_METOD.get(metoda))
            ))

        fig.update_layout(
            title="Czas wykonania w funkcji wymiaru M",
            xaxis_title="M",
            yaxis_title="Mediana czasu [s]",
            xaxis_type="log",
            yaxis_type="log",
            legend_title="Metoda",
            template=TEMPLATE_PLOTLY,
            height=WYSOKOSC_WYKRESU_STANDARD
        )
        return fig

    except Exception as e:
        return utworz_pusty_wykres(f"Błąd: {e}")
