"""Moduł eksportu raportu HTML.

Składa wykresy Plotly i tabele wyników w jeden samodzielny plik HTML
(Plotly.js ładowany z CDN), pogrupowany w sekcje, z osobną stroną
tytułową i stopką. Układ strony jest przystosowany do druku (A4).
"""

import datetime
import html
import logging

import pandas as pd

from data_io import atomic_write_text

logger = logging.getLogger(__name__)

_STYLE = (
    'body { font-family: Arial, sans-serif; margin: 0; padding: 0; background: #f5f5f5; color: #333; }'
    '@page { size: A4; margin: 1.5cm; }'
    '.page { page-break-after: always; padding: 20px; box-sizing: border-box; }'
    '.page:last-child { page-break-after: auto; }'
    'h1 { text-align: center; color: #2c3e50; margin-bottom: 10px; }'
    '.chart-container { margin: 20px 0; background: white; padding: 20px; '
    'border-radius: 10px; box-shadow: 0 2px 5px rgba(0,0,0,0.1); page-break-inside: avoid; }'
    '.info { text-align: center; color: #666; font-size: 14px; margin: 10px 0; }'
    '.section-header { background: linear-gradient(135deg, #667eea 0%, #764ba2 100%); '
    'color: white; padding: 15px; margin: 20px 0; border-radius: 10px; '
    'text-align: center; font-size: 1.3em; font-weight: bold; page-break-after: avoid; }'
    '.chart-title { color: #2c3e50; font-size: 1.1em; margin: 15px 0; '
    'text-align: center; font-weight: 600; }'
    '.results-table { width: 100%; border-collapse: collapse; margin: 20px 0; background: white; }'
    '.results-table th { background: #f8f9fa; padding: 8px; border-bottom: 2px solid #ddd; text-align: left; }'
    '.results-table td { padding: 6px 8px; border-bottom: 1px solid #eee; font-family: monospace; }'
    '@media print {'
    '  body { background: white; -webkit-print-color-adjust: exact; print-color-adjust: exact; }'
    '  .chart-container { box-shadow: none; border: 1px solid #eee; }'
    '  .section-header { -webkit-print-color-adjust: exact; print-color-adjust: exact; }'
    '}'
)


def _render_item(item) -> str:
    if isinstance(item, pd.DataFrame):
        return item.to_html(index=False, classes='results-table', border=0, float_format=lambda v: f"{v:.3e}")
    return item.to_html(
        full_html=False,
        include_plotlyjs='cdn',
        config={'responsive': True, 'displayModeBar': False}
    )


def export_html_report(path, sections, title="Raport wyboru grupy symetrii", info_lines=()):
    """Zapisuje raport HTML z wykresami i tabelami pogrupowanymi w sekcje.

    Args:
        path (str): Ścieżka pliku wynikowego.
        sections (Mapping[str, list[tuple[str, go.Figure | pd.DataFrame]]]):
            Sekcje raportu w kolejności wyświetlania; każda pozycja to para
            (tytuł, wykres lub tabela).
        title (str): Tytuł strony.
        info_lines (Iterable[str]): Dodatkowe wiersze strony tytułowej.

    Returns:
        int: Liczba osadzonych pozycji (wykresów i tabel).
    """
    parts = [
        '<!DOCTYPE html>',
        '<html><head>',
        '<meta charset="utf-8">',
        '<meta name="viewport" content="width=device-width, initial-scale=1.0">',
        f'<title>{html.escape(title)}</title>',
        f'<style>{_STYLE}</style>',
        '</head><body>',
        '<div class="page">',
        f'<h1>🔍 {html.escape(title)}</h1>',
        f'<p class="info">Wygenerowano: {datetime.datetime.now().strftime("%Y-%m-%d %H:%M:%S")}</p>',
    ]
    parts.extend(f'<p class="info">{html.escape(line)}</p>' for line in info_lines)
    parts.append('</div>')

    count = 0
    for sekcja_nazwa, pozycje in sections.items():
        if not pozycje:
            continue
        parts.append('<div class="page">')
        parts.append(f'<div class="section-header">📊 {html.escape(sekcja_nazwa)}</div>')
        for tytul, item in pozycje:
            parts.append('<div class="chart-container">')
            parts.append(f'<div class="chart-title">{html.escape(tytul)}</div>')
            parts.append(_render_item(item))
            parts.append('</div>')
            count += 1
        parts.append('</div>')

    parts.append('<div class="page" style="text-align: center; padding-top: 2cm;">')
    parts.append('<hr style="margin: 20px auto; max-width: 80%; border: none; border-top: 1px solid #ddd;">')
    parts.append('<p class="info" style="font-size: 12px; color: #999;">Wygenerowano przez dcgevp</p>')
    parts.append('</div>')
    parts.append('</body></html>')

    atomic_write_text(path, "".join(parts))
    logger.info("✅ Wyeksportowano %d pozycji do pliku: %s", count, path)
    return count
