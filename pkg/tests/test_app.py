import numpy as np
import plotly.graph_objects as go
import pytest

from app import build_parser, run
from data_io import read_group, read_matrix, read_tsv, write_matrix
from perm_group import Permutation


@pytest.fixture
def circulant_file(tmp_path, rng, make_circulant):
    path = tmp_path / "r.txt"
    write_matrix(path, make_circulant(6, rng))
    return path


def test_parser_requires_command(capsys):
    assert run([]) == 1


def test_unknown_subcommand_exits_with_one(capsys):
    assert run(["frobnicate"]) == 1


def test_help_exits_with_zero(capsys):
    assert run(["--help"]) == 0
    assert "select" in capsys.readouterr().out


def test_select_prints_certificate_and_writes_generator(tmp_path, circulant_file, capsys):
    out = tmp_path / "a.txt"
    assert run(["select", "--matrix", str(circulant_file), "--out", str(out)]) == 0
    stdout = capsys.readouterr().out
    assert stdout.startswith("lambda_min\t")
    assert "certified\tyes" in stdout
    assert "kappa\t" in stdout
    a = read_matrix(out)
    assert a.shape == (6, 6)
    assert np.linalg.norm(a) == pytest.approx(1.0)


def test_select_rejects_non_square_matrix(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("2 3 real\n1 2 3\n4 5 6\n", encoding="utf-8")
    assert run(["select", "--matrix", str(path)]) == 1
    assert "❌" in capsys.readouterr().err


def test_select_missing_file(tmp_path, capsys):
    assert run(["select", "--matrix", str(tmp_path / "brak.txt")]) == 1


def test_select_dependent_basis_is_numerical_failure(tmp_path, circulant_file, capsys):
    p = Permutation((1, 0, 2, 3, 4, 5)).matrix()
    write_matrix(tmp_path / "p.txt", p)
    write_matrix(tmp_path / "p2.txt", 2 * p)
    manifest = tmp_path / "basis.txt"
    manifest.write_text("p p.txt\np2 p2.txt\n", encoding="utf-8")
    assert run(["select", "--matrix", str(circulant_file), "--basis", f"manifest:{manifest}"]) == 2


def test_select_c6_basis_requires_m6(tmp_path, rng, make_symmetric, capsys):
    path = tmp_path / "r4.txt"
    write_matrix(path, make_symmetric(4, rng))
    assert run(["select", "--matrix", str(path), "--basis", "c6-example"]) == 1


def test_select_with_permutation_file(tmp_path, circulant_file, capsys):
    perms = tmp_path / "perms.txt"
    perms.write_text("6\n1 2 3 4 5 0\n", encoding="utf-8")
    assert run(["select", "--matrix", str(circulant_file), "--basis", f"perms:{perms}"]) == 0
    assert "c[(0 1 2 3 4 5)]" in capsys.readouterr().out


def test_oracle_aut_on_cycle_graph(tmp_path, capsys):
    out = tmp_path / "aut.txt"
    assert run(["oracle-aut", "--graph", "C6", "--beta", "1.0", "--out", str(out)]) == 0
    assert "order\t12" in capsys.readouterr().out
    assert read_group(out).order == 12


def test_sequential_on_c6_resolvent(tmp_path, capsys):
    trace_out = tmp_path / "trace.tsv"
    group_out = tmp_path / "group.txt"
    code = run([
        "sequential", "--graph", "C6", "--kernel", "resolvent", "--basis", "c6-example",
        "--out", str(trace_out), "--group-out", str(group_out),
    ])
    assert code == 0
    stdout = capsys.readouterr().out
    assert "termination\t" in stdout
    frame = read_tsv(trace_out)
    assert frame["k"].iloc[0] == 1
    assert read_group(group_out).order in (6, 12)


def test_aut_graph_writes_table_and_chart(tmp_path, capsys):
    table = tmp_path / "c6.tsv"
    chart = tmp_path / "c6.html"
    assert run(["aut-graph", "--graph", "C6", "--out", str(table), "--chart", str(chart)]) == 0
    assert "# C6\taut_order=12" in capsys.readouterr().out
    frame = read_tsv(table)
    assert set(frame["graph"]) == {"C6"}
    assert chart.exists()


def test_aut_graph_rejects_unknown_chart_format(tmp_path, capsys):
    assert run(["aut-graph", "--graph", "K3", "--chart", str(tmp_path / "k3.bmp")]) == 1


def test_chirp_sweep_small_grid(capsys):
    assert run(["chirp-sweep", "--m", "16", "--grid", "0,0.3,7"]) == 0
    stdout = capsys.readouterr().out
    assert stdout.startswith("# psi\tlambda_min")
    assert "argmin_psi\t0.150000" in stdout


def test_chirp_sweep_bad_grid(capsys):
    assert run(["chirp-sweep", "--m", "8", "--grid", "0,0.3"]) == 1


def test_reynolds_projection_lands_in_commutant(tmp_path, rng, make_symmetric, capsys):
    x = tmp_path / "x.txt"
    projected = tmp_path / "px.txt"
    write_matrix(x, make_symmetric(4, rng))
    assert run(["reynolds", "--matrix", str(x), "--group", "cyclic:4", "--out", str(projected)]) == 0
    stdout = capsys.readouterr().out
    assert "group_order\t4" in stdout
    assert "input_in_commutant\tno" in stdout

    assert run(["reynolds", "--matrix", str(projected), "--group", "cyclic:4"]) == 0
    assert "input_in_commutant\tyes" in capsys.readouterr().out


def test_classify_group_modes(capsys):
    assert run(["classify-group", "--group", "cyclic:4"]) == 0
    assert "classification\tIdentifiable" in capsys.readouterr().out
    assert run(["classify-group", "--group", "cyclic:4", "--merge-transpose"]) == 0
    stdout = capsys.readouterr().out
    assert "classification\tAmbiguous" in stdout
    assert "hmax_order\t8" in stdout


def test_classify_group_from_file(tmp_path, capsys):
    path = tmp_path / "g.txt"
    path.write_text("4\n1 0 2 3\n0 1 3 2\n", encoding="utf-8")
    assert run(["classify-group", "--group", str(path)]) == 0
    assert "gstar_order\t4" in capsys.readouterr().out


def test_bad_group_descriptor(capsys):
    assert run(["classify-group", "--group", "cyclic:x"]) == 1


def test_gen_experiment(tmp_path, capsys):
    out = tmp_path / "trials.tsv"
    assert run(["gen-experiment", "--group", "dihedral:4", "--trials", "3", "--out", str(out)]) == 0
    assert "classification\tIdentifiable" in capsys.readouterr().out
    assert len(read_tsv(out)) == 3


def test_lattice_check(capsys):
    assert run(["lattice-check", "--g1", "cyclic:6", "--g2", "dihedral:6"]) == 0
    assert "passed\tyes" in capsys.readouterr().out


def test_lattice_check_rejects_non_subgroup(capsys):
    assert run(["lattice-check", "--g1", "dihedral:6", "--g2", "cyclic:6"]) == 1


def test_bench_small(tmp_path, capsys):
    out = tmp_path / "bench.tsv"
    assert run(["bench", "--m-values", "4,8", "--d", "3", "--repeats", "1", "--out", str(out)]) == 0
    frame = read_tsv(out)
    assert list(frame.columns) == ["M", "method", "median_s"]


def test_report_writes_html(tmp_path, capsys):
    out = tmp_path / "raport.html"
    assert run(["report", "--out", str(out), "--m", "16"]) == 0
    stdout = capsys.readouterr().out
    assert "items\t8" in stdout
    assert "Automorfizmy grafów" in out.read_text(encoding="utf-8")


def test_chart_alias_svg_maps_to_chart():
    args = build_parser().parse_args(["aut-graph", "--svg", "x.svg"])
    assert args.chart == "x.svg"


def test_aut_graph_writes_svg_chart(tmp_path, capsys):
    pytest.importorskip("kaleido")
    chart = tmp_path / "c6.svg"
    code = run(["aut-graph", "--graph", "C6", "--svg", str(chart)])
    if code == 1 and "kaleido" in capsys.readouterr().err:
        pytest.skip("kaleido nie może uruchomić przeglądarki w tym środowisku")
    assert code == 0
    assert "<svg" in chart.read_text(encoding="utf-8")


def test_static_export_failure_exits_with_one(tmp_path, monkeypatch, capsys):
    def broken_export(self, *args, **kwargs):
        raise ValueError("Image export using the \"kaleido\" engine requires the Kaleido package")

    monkeypatch.setattr(go.Figure, "write_image", broken_export)
    assert run(["aut-graph", "--graph", "K3", "--svg", str(tmp_path / "k3.svg")]) == 1
    assert "kaleido" in capsys.readouterr().err
