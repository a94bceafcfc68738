"""Główny plik aplikacji: wiersz poleceń biblioteki wyboru grup symetrii.

Ten plik pełni rolę punktu startowego. Jego główne zadania to:
- Konfiguracja logowania (stderr z UTF-8, opcjonalny plik rotowany).
- Parsowanie argumentów i rozdzielenie pracy na podkomendy.
- Wczytanie macierzy, grup i baz przy użyciu modułu `data_io`.
- Uruchomienie obliczeń z modułów `dc_gevp`, `seq_gevp`, `experiments`
  i `identifiability` oraz zapis wyników (TSV, macierze, wykresy Plotly).
- Zamiana wyjątków na kody wyjścia: 0 sukces, 1 błąd walidacji,
  2 błąd numeryczny.

Przykład:
    python app.py select --matrix r.mat --basis standard --out a.mat
    python app.py aut-graph --graph C6 --beta 1.0 --chart c6.html
"""

import argparse
import datetime
import logging
import sys
from collections import OrderedDict
from io import TextIOWrapper
from logging.handlers import RotatingFileHandler

import numpy as np
import pandas as pd

from config import (
    CHIRP_M,
    CHIRP_PSI0,
    CHIRP_SNR_DB,
    DEFAULT_BETA,
    DEFAULT_SEED,
    GRAPH_LABELS,
    LOG_BACKUP_COUNT,
    LOG_FILE,
    LOG_FORMAT,
    LOG_LEVEL,
    LOG_MAX_BYTES,
    SWEEP_GRID,
    ZERO_TOL,
)
from errors import GroupSelectionError, ValidationError, exit_code_for


def _ensure_utf8_stream(stream):
    """Zwraca strumień tekstowy zapisujący UTF-8 (także w konsoli Windows)."""
    if stream is None:
        return None

    if hasattr(stream, "reconfigure"):
        try:
            stream.reconfigure(encoding="utf-8", errors="replace")
            return stream
        except (AttributeError, ValueError, OSError):
            pass

    if hasattr(stream, "buffer"):
        return TextIOWrapper(stream.buffer, encoding="utf-8", errors="replace")

    return stream


def configure_logging(level=LOG_LEVEL, log_file=LOG_FILE):
    """Konfiguruje logger główny: stderr (UTF-8) i opcjonalnie plik rotowany.

    Args:
        level (str): Nazwa poziomu logowania.
        log_file (str): Ścieżka pliku logu; pusty napis wyłącza zapis do pliku.
    """
    utf8_stderr = _ensure_utf8_stream(getattr(sys, "stderr", None))
    handlers = [logging.StreamHandler(stream=utf8_stderr or sys.stderr)]
    if log_file:
        handlers.append(RotatingFileHandler(
            log_file, maxBytes=LOG_MAX_BYTES, backupCount=LOG_BACKUP_COUNT, encoding='utf-8'
        ))
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)


from basis_catalog import c6_example_basis, perm_diff_basis, standard_catalog, user_basis
from charts import (
    export_html_report,
    generate_benchmark_chart,
    generate_residual_chart,
    generate_sweep_chart,
    zapisz_wykres,
)
from data_io import (
    frame_to_tsv,
    read_group,
    read_manifest,
    read_matrix,
    read_permutations,
    write_group,
    write_matrix,
    write_tsv,
)
from dc_gevp import select_generator
from experiments import (
    benchmark,
    chirp_covariance,
    chirp_sweep,
    diffusion_covariance,
    graph_aut_experiment,
    make_graph,
    resolvent_covariance,
)
from identifiability import ENSEMBLES, REAL_SYMMETRIC, generative_experiment, lattice_insensitivity_check
from matrix_core import as_hermitian, as_square, structural_capacity
from perm_group import (
    aut_bruteforce,
    classify_identifiability,
    cyclic_group,
    dihedral_group,
    in_commutant,
    perm_matrix,
    reynolds_project,
    symmetric_group,
    trivial_group,
)
from seq_gevp import sequential_select

logger = logging.getLogger(__name__)


class _ArgumentParser(argparse.ArgumentParser):
    """Parser zwracający kod 1 (zamiast 2) przy błędnych argumentach."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"❌ {self.prog}: {message}\n")


def _emit(text):
    print(text, end="" if text.endswith("\n") else "\n")


# =============================================================================
# WCZYTYWANIE WEJŚĆ
# =============================================================================
def _load_r(args):
    """Macierz R z pliku (`--matrix`) lub z grafu (`--graph`, `--beta`, `--kernel`)."""
    if getattr(args, "matrix", None):
        r = read_matrix(args.matrix)
    elif getattr(args, "graph", None):
        g = make_graph(args.graph)
        if args.kernel == "resolvent":
            r = resolvent_covariance(g)
        else:
            r = diffusion_covariance(g, args.beta)
    else:
        raise ValidationError("Podaj --matrix PLIK lub --graph ETYKIETA")
    return as_hermitian(r, "R")


def _load_basis(opis, m):
    """Baza z opisu: standard | c6-example | perms:PLIK | perm-diff:PLIK | manifest:PLIK."""
    if opis == "standard":
        return standard_catalog(m)
    if opis == "c6-example":
        if m != 6:
            raise ValidationError(f"Baza c6-example wymaga M = 6, otrzymano M = {m}")
        return c6_example_basis()
    kind, _, path = opis.partition(":")
    if not path:
        raise ValidationError(f"Nieznana baza '{opis}'; dostępne: standard, c6-example, perms:PLIK, perm-diff:PLIK, manifest:PLIK")
    if kind == "manifest":
        basis = read_manifest(path)
    elif kind in ("perms", "perm-diff"):
        _, perms = read_permutations(path)
        if not perms:
            raise ValidationError(f"{path}: brak permutacji różnych od identyczności")
        if kind == "perms":
            basis = user_basis([perm_matrix(p) for p in perms], [p.cycle_notation() for p in perms])
        else:
            basis = perm_diff_basis(perms)
    else:
        raise ValidationError(f"Nieznany rodzaj bazy '{kind}'")
    if basis.dim != m:
        raise ValidationError(f"Baza ma wymiar {basis.dim}, macierz R ma wymiar {m}")
    return basis


_NAMED_GROUPS = {
    "trivial": trivial_group,
    "cyclic": cyclic_group,
    "dihedral": dihedral_group,
    "symmetric": symmetric_group,
}


def _load_group(opis):
    """Grupa z opisu `cyclic:N`, `dihedral:N`, `symmetric:N`, `trivial:N` lub z pliku grupy."""
    kind, sep, value = opis.partition(":")
    if sep and kind in _NAMED_GROUPS:
        try:
            degree = int(value)
        except ValueError as err:
            raise ValidationError(f"Niepoprawny stopień w '{opis}'") from err
        if degree < 1:
            raise ValidationError(f"Stopień musi być ≥ 1, otrzymano {degree}")
        return _NAMED_GROUPS[kind](degree)
    return read_group(opis)


def _parse_grid(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise ValidationError(f"Siatka musi mieć postać lo,hi,kroki; otrzymano '{text}'")
    try:
        return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as err:
        raise ValidationError(f"Niepoprawna siatka '{text}'") from err


def _parse_int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as err:
        raise ValidationError(f"Niepoprawna lista liczb '{text}'") from err


def _write_table(df, out):
    if out:
        write_tsv(out, df)
        logger.info("✅ Zapisano tabelę: %s", out)
    else:
        _emit(frame_to_tsv(df))


def _save_chart(fig, path):
    if path:
        zapisz_wykres(fig, path)
        logger.info("📊 Zapisano wykres: %s", path)


# =============================================================================
# PODKOMENDY
# =============================================================================
def cmd_select(args):
    r = _load_r(args)
    basis = _load_basis(args.basis, r.shape[0])
    sol = select_generator(r, basis)
    norm_sq = float(np.linalg.norm(r)) ** 2
    for line in sol.summary_lines():
        _emit(line)
    _emit(f"norm_R_sq\t{norm_sq:.6e}")
    _emit(f"kappa\t{structural_capacity(r):.6f}")
    if args.out:
        write_matrix(args.out, sol.generator)
        logger.info("✅ Zapisano generator A*: %s", args.out)
    if sol.certified:
        logger.info("✅ Certyfikat: λ_min ≤ %.0e·‖R‖_F², istnieje dokładnie komutujący generator", ZERO_TOL)
    return 0


def cmd_sequential(args):
    r = _load_r(args)
    basis = _load_basis(args.basis, r.shape[0])
    trace = sequential_select(r, basis, tau=args.tau, k_max=args.kmax)
    _write_table(trace.to_frame(), args.out)
    _emit(f"final_order\t{trace.final_group.order}")
    _emit(f"termination\t{trace.termination.value}")
    _emit("generators\t" + " ".join(g.cycle_notation() for g in trace.final_group.generators))
    if args.group_out:
        write_group(args.group_out, trace.final_group)
    return 0


def cmd_aut_graph(args):
    labels = GRAPH_LABELS if args.graph == "all" else [args.graph]
    frames = []
    for label in labels:
        result = graph_aut_experiment(make_graph(label), args.beta)
        frame = result.table.copy()
        frame.insert(0, "graph", result.label)
        frames.append(frame)
        _emit(f"# {result.label}\taut_order={result.aut_order}\tmin_delta={result.min_delta_generator}"
              f"\tlambda_min={result.selection.lambda_min:.6e}")
    table = pd.concat(frames, ignore_index=True)
    _write_table(table, args.out)
    if args.chart:
        chart_df = table.assign(generator=table["graph"] + ":" + table["generator"])
        title = f"Residua komutacji, β = {args.beta:g}"
        _save_chart(generate_residual_chart(chart_df, title=title), args.chart)
    return 0


def cmd_chirp_sweep(args):
    lo, hi, steps = _parse_grid(args.grid)
    r = chirp_covariance(args.m, args.psi0, snr_db=args.snr_db, snapshots=args.snapshots, seed=args.seed)
    result = chirp_sweep(r, lo, hi, steps)
    _write_table(result.to_frame(), args.out)
    _emit(f"argmin_psi\t{result.argmin_psi:.6f}")
    _emit(f"norm_R_sq\t{float(np.linalg.norm(r)) ** 2:.6e}")
    if args.chart:
        _save_chart(generate_sweep_chart(result.to_frame(), psi0=args.psi0), args.chart)
    return 0


def cmd_oracle_aut(args):
    r = _load_r(args)
    aut = aut_bruteforce(r, tol=args.tol)
    _emit(f"order\t{aut.order}")
    _emit("generators\t" + " ".join(g.cycle_notation() for g in aut.generators))
    if args.out:
        write_group(args.out, aut)
    return 0


def cmd_reynolds(args):
    x = as_square(read_matrix(args.matrix), "X")
    group = _load_group(args.group)
    projected = reynolds_project(group, x)
    norm = float(np.linalg.norm(x))
    change = float(np.linalg.norm(projected - x)) / norm if norm > 0 else 0.0
    _emit(f"group_order\t{group.order}")
    _emit(f"relative_change\t{change:.6e}")
    _emit(f"input_in_commutant\t{'yes' if in_commutant(group, x) else 'no'}")
    if args.out:
        write_matrix(args.out, projected)
    return 0


def cmd_classify_group(args):
    group = _load_group(args.group)
    result = classify_identifiability(group, merge_transpose=args.merge_transpose)
    _emit(f"classification\t{'Identifiable' if result.is_identifiable else 'Ambiguous'}")
    _emit(f"gstar_order\t{group.order}")
    _emit(f"merged_transpose\t{'yes' if args.merge_transpose else 'no'}")
    if not result.is_identifiable:
        _emit(f"hmax_order\t{result.hmax.order}")
        _emit("hmax_generators\t" + " ".join(g.cycle_notation() for g in result.hmax.generators))
    return 0


def cmd_gen_experiment(args):
    group = _load_group(args.group)
    report = generative_experiment(group, trials=args.trials, seed=args.seed, ensemble=args.ensemble)
    for line in report.summary_lines():
        _emit(line)
    if args.out:
        write_tsv(args.out, report.trials)
    return 0


def cmd_lattice_check(args):
    g1 = _load_group(args.g1)
    g2 = _load_group(args.g2)
    report = lattice_insensitivity_check(g1, g2, seed=args.seed, ensemble=args.ensemble)
    _emit(f"order_g1\t{report.order_g1}")
    _emit(f"order_g2\t{report.order_g2}")
    _emit(f"residual_g1\t{report.residual_g1:.3e}")
    _emit(f"residual_g2\t{report.residual_g2:.3e}")
    _emit(f"commutant_reversal\t{'yes' if report.commutant_reversal else 'no'}")
    _emit(f"passed\t{'yes' if report.passed() else 'no'}")
    return 0


def cmd_bench(args):
    m_values = _parse_int_list(args.m_values) if args.m_values else None
    frame = benchmark(m_values, d=args.d, repeats=args.repeats, seed=args.seed)
    _write_table(frame, args.out)
    if args.chart:
        _save_chart(generate_benchmark_chart(frame), args.chart)
    return 0


def cmd_report(args):
    sekcje = OrderedDict()

    wykresy_grafow = []
    for label in GRAPH_LABELS:
        result = graph_aut_experiment(make_graph(label), args.beta)
        tytul = f"{result.label}: |Aut| = {result.aut_order}"
        wykresy_grafow.append((tytul, generate_residual_chart(result.table, title=tytul)))
    sekcje["Automorfizmy grafów"] = wykresy_grafow

    r = chirp_covariance(args.m, CHIRP_PSI0, snr_db=CHIRP_SNR_DB, seed=args.seed)
    sweep = chirp_sweep(r, *SWEEP_GRID)
    sekcje["Przegląd współczynnika chirp"] = [
        (f"M = {args.m}, ψ0 = {CHIRP_PSI0:g}, SNR = {CHIRP_SNR_DB:g} dB",
         generate_sweep_chart(sweep.to_frame(), psi0=CHIRP_PSI0)),
    ]

    c6 = resolvent_covariance(make_graph("C6"))
    trace = sequential_select(c6, c6_example_basis())
    sekcje["Sekwencyjny wybór podgrupy (C6)"] = [
        (f"Końcowy rząd grupy: {trace.final_group.order} ({trace.termination.value})", trace.to_frame()),
    ]

    out = args.out or f"Raport_DC_GEVP_{datetime.datetime.now().strftime('%Y%m%d_%H%M%S')}.html"
    count = export_html_report(out, sekcje, info_lines=[f"β = {args.beta:g}", f"ziarno = {args.seed}"])
    _emit(f"report\t{out}")
    _emit(f"items\t{count}")
    return 0


# =============================================================================
# PARSER
# =============================================================================
def _add_matrix_source(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", help="plik macierzy hermitowskiej R")
    src.add_argument("--graph", help="etykieta grafu (" + ", ".join(GRAPH_LABELS) + ")")
    p.add_argument("--beta", type=float, default=DEFAULT_BETA, help="parametr dyfuzji β dla --graph")
    p.add_argument("--kernel", choices=["diffusion", "resolvent"], default="diffusion",
                   help="kowariancja grafu: exp(−βL) lub (I+L)^−1")


def build_parser():
    parser = _ArgumentParser(prog="dcgevp", description="Wybór generatorów grup permutacji komutujących z macierzą kowariancji.")
    parser.add_argument("-v", "--verbose", action="store_true", help="logowanie na poziomie DEBUG")
    sub = parser.add_subparsers(dest="command", required=True, metavar="KOMENDA")

    p = sub.add_parser("select", help="optymalny generator w bazie (DC-GEVP)")
    _add_matrix_source(p)
    p.add_argument("--basis", default="standard")
    p.add_argument("--out", help="plik na macierz A*")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("sequential", help="sekwencyjne odkrywanie podgrupy")
    _add_matrix_source(p)
    p.add_argument("--basis", default="standard")
    p.add_argument("--tau", type=float, default=0.0)
    p.add_argument("--kmax", type=int, default=10)
    p.add_argument("--out", help="plik TSV śladu iteracji")
    p.add_argument("--group-out", help="plik grupy końcowej")
    p.set_defaults(func=cmd_sequential)

    p = sub.add_parser("aut-graph", help="badanie automorfizmów grafów")
    p.add_argument("--graph", default="all")
    p.add_argument("--beta", type=float, default=DEFAULT_BETA)
    p.add_argument("--out")
    p.add_argument("--chart", "--svg", dest="chart", help="plik wykresu (.html, .svg, .png)")
    p.set_defaults(func=cmd_aut_graph)

    p = sub.add_parser("chirp-sweep", help="przegląd współczynnika chirp")
    p.add_argument("--m", type=int, default=CHIRP_M)
    p.add_argument("--psi0", type=float, default=CHIRP_PSI0)
    p.add_argument("--snr-db", type=float, default=CHIRP_SNR_DB)
    p.add_argument("--grid", default=",".join(str(v) for v in SWEEP_GRID))
    p.add_argument("--snapshots", type=int, default=None)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out")
    p.add_argument("--chart", "--svg", dest="chart")
    p.set_defaults(func=cmd_chirp_sweep)

    p = sub.add_parser("oracle-aut", help="Aut(R) metodą wyczerpującą (M ≤ 8)")
    _add_matrix_source(p)
    p.add_argument("--tol", type=float, default=ZERO_TOL)
    p.add_argument("--out", help="plik grupy")
    p.set_defaults(func=cmd_oracle_aut)

    p = sub.add_parser("reynolds", help="rzut macierzy na komutant grupy")
    p.add_argument("--matrix", required=True)
    p.add_argument("--group", required=True, help="plik grupy lub cyclic:N, dihedral:N, symmetric:N, trivial:N")
    p.add_argument("--out")
    p.set_defaults(func=cmd_reynolds)

    p = sub.add_parser("classify-group", help="klasyfikacja identyfikowalności")
    p.add_argument("--group", required=True)
    p.add_argument("--merge-transpose", action="store_true")
    p.set_defaults(func=cmd_classify_group)

    p = sub.add_parser("gen-experiment", help="eksperyment modelu generatywnego")
    p.add_argument("--group", required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--ensemble", choices=ENSEMBLES, default=REAL_SYMMETRIC)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen_experiment)

    p = sub.add_parser("lattice-check", help="niewrażliwość kraty komutantów dla G1 ⊆ G2")
    p.add_argument("--g1", required=True)
    p.add_argument("--g2", required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--ensemble", choices=ENSEMBLES, default=REAL_SYMMETRIC)
    p.set_defaults(func=cmd_lattice_check)

    p = sub.add_parser("bench", help="pomiar czasów wykonania")
    p.add_argument("--m-values", help="lista M oddzielona przecinkami")
    p.add_argument("--d", type=int, default=5)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out")
    p.add_argument("--chart", "--svg", dest="chart")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("report", help="raport HTML z wykresami")
    p.add_argument("--out")
    p.add_argument("--beta", type=float, default=DEFAULT_BETA)
    p.add_argument("--m", type=int, default=CHIRP_M)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_report)

    return parser


def run(argv=None):
    """Uruchamia podkomendę i zwraca kod wyjścia (0, 1 lub 2)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else (0 if exc.code is None else 1)

    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        return args.func(args)
    except GroupSelectionError as err:
        logger.error("❌ %s", err)
        print(f"❌ {err}", file=sys.stderr)
        return exit_code_for(err)
    except OSError as err:
        logger.error("❌ Błąd zapisu/odczytu: %s", err)
        print(f"❌ {err}", file=sys.stderr)
        return 1


def main():
    configure_logging()
    sys.exit(run())


# =============================================================================
# URUCHOMIENIE APLIKACJI
# =============================================================================
if __name__ == "__main__":
    main()
