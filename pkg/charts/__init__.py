"""
Moduł wykresów - centralny import wszystkich funkcji generujących wykresy
"""

from .residuals import generate_residual_chart
from .sweep import generate_sweep_chart
from .benchmark import generate_benchmark_chart
from .report import export_html_report
from .utils import utworz_pusty_wykres, zapisz_wykres

__all__ = [
    'generate_residual_chart',
    'generate_sweep_chart',
    'generate_benchmark_chart',
    'export_html_report',
    'utworz_pusty_wykres',
    'zapisz_wykres'
]
