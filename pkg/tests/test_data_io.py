import os

import numpy as np
import pandas as pd
import pytest

from data_io import (
    atomic_write_text,
    format_group,
    frame_to_tsv,
    parse_matrix,
    parse_permutations,
    read_group,
    read_manifest,
    read_matrix,
    read_tsv,
    write_group,
    write_matrix,
    write_tsv,
)
from errors import ValidationError
from perm_group import Permutation, dihedral_group


def test_real_matrix_round_trip_is_exact(tmp_path, rng, make_symmetric):
    a = make_symmetric(5, rng)
    path = tmp_path / "r.txt"
    write_matrix(path, a)
    back = read_matrix(path)
    assert back.dtype == float
    assert np.array_equal(back, a)


def test_complex_matrix_round_trip_is_exact(tmp_path, rng, make_hermitian):
    a = make_hermitian(4, rng)
    path = tmp_path / "c.txt"
    write_matrix(path, a)
    assert path.read_text().splitlines()[0] == "4 4 complex"
    assert np.array_equal(read_matrix(path), a)


def test_parse_matrix_skips_comments():
    a = parse_matrix("# komentarz\n2 2 real\n1 0\n0 1\n")
    assert np.array_equal(a, np.eye(2))


@pytest.mark.parametrize("text", [
    "2 2\n1 0\n0 1\n",
    "2 2 integer\n1 0\n0 1\n",
    "x 2 real\n1 0\n0 1\n",
    "",
])
def test_parse_matrix_rejects_bad_header(text):
    with pytest.raises(ValidationError):
        parse_matrix(text)


def test_parse_matrix_rejects_wrong_row_count():
    with pytest.raises(ValidationError, match="wierszy"):
        parse_matrix("3 3 real\n1 0 0\n0 1 0\n")


def test_parse_matrix_rejects_wrong_token_count():
    with pytest.raises(ValidationError, match="wpisów"):
        parse_matrix("2 2 complex\n1 0 0 0\n0 0 1\n")


def test_parse_matrix_rejects_non_numbers():
    with pytest.raises(ValidationError):
        parse_matrix("1 2 real\n1 abc\n")


def test_read_matrix_missing_file(tmp_path):
    with pytest.raises(ValidationError):
        read_matrix(tmp_path / "brak.txt")


def test_parse_permutations_skips_identity():
    degree, perms = parse_permutations("4\n1 2 3 0\n0 1 2 3\n")
    assert degree == 4
    assert perms == [Permutation((1, 2, 3, 0))]


def test_parse_permutations_rejects_wrong_length():
    with pytest.raises(ValidationError):
        parse_permutations("4\n1 0 2\n")


def test_parse_permutations_rejects_non_bijection():
    with pytest.raises(ValidationError):
        parse_permutations("3\n0 0 1\n")


def test_group_file_round_trip(tmp_path):
    group = dihedral_group(5)
    path = tmp_path / "d5.txt"
    write_group(path, group)
    assert format_group(group).startswith("5\n")
    assert read_group(path).elements == group.elements


def test_manifest_resolves_relative_paths(tmp_path):
    sub = tmp_path / "gens"
    sub.mkdir()
    shift = Permutation((1, 2, 0)).matrix()
    write_matrix(sub / "shift.txt", shift)
    write_matrix(sub / "flip.txt", np.fliplr(np.eye(3)))
    manifest = tmp_path / "basis.txt"
    manifest.write_text("# etykieta ścieżka\nshift gens/shift.txt\nflip gens/flip.txt\n", encoding="utf-8")
    basis = read_manifest(manifest)
    assert basis.labels == ("shift", "flip")
    assert np.array_equal(basis.elements[0], shift)


def test_manifest_rejects_malformed_line(tmp_path):
    manifest = tmp_path / "basis.txt"
    manifest.write_text("tylko-etykieta\n", encoding="utf-8")
    with pytest.raises(ValidationError):
        read_manifest(manifest)


def test_manifest_rejects_empty(tmp_path):
    manifest = tmp_path / "basis.txt"
    manifest.write_text("# pusto\n", encoding="utf-8")
    with pytest.raises(ValidationError):
        read_manifest(manifest)


def test_tsv_header_and_round_trip(tmp_path):
    df = pd.DataFrame({"psi": [0.0, 0.15], "lambda_min": [1.5, 2.5e-12], "label": ["a", "b"]})
    text = frame_to_tsv(df)
    assert text.splitlines()[0] == "# psi\tlambda_min\tlabel"
    path = tmp_path / "sweep.tsv"
    write_tsv(path, df)
    back = read_tsv(path)
    assert list(back.columns) == ["psi", "lambda_min", "label"]
    assert back["lambda_min"].tolist() == pytest.approx([1.5, 2.5e-12])
    assert back["label"].tolist() == ["a", "b"]


def test_read_tsv_requires_header(tmp_path):
    path = tmp_path / "bad.tsv"
    path.write_text("a\tb\n1\t2\n", encoding="utf-8")
    with pytest.raises(ValidationError):
        read_tsv(path)


def test_atomic_write_replaces_and_leaves_no_temp_files(tmp_path):
    path = tmp_path / "out.txt"
    path.write_text("stare", encoding="utf-8")
    atomic_write_text(path, "nowe\n")
    assert path.read_text(encoding="utf-8") == "nowe\n"
    assert sorted(os.listdir(tmp_path)) == ["out.txt"]
