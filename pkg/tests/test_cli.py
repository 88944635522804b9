"""CLI and document format: round trips, commands, exit codes, determinism."""

import csv
import json
import subprocess
import sys

import pytest

from ainfty.cli import main
from ainfty.documents import parse, serialize
from ainfty.errors import DocumentError, UnknownFixture
from ainfty.fixtures import FIXTURE_NAMES, fixture_document

from helpers import dense_rank_modp


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_round_trip_stability():
    for name in FIXTURE_NAMES:
        text = serialize(fixture_document(name))
        doc = parse(text)
        assert serialize(doc.raw) == text


def test_every_fixture_parses_and_validates(tmp_path, capsys):
    for name in FIXTURE_NAMES:
        path = tmp_path / f"{name}.json"
        path.write_text(serialize(fixture_document(name)))
        code, out, _ = run_cli(["validate", str(path)], capsys)
        assert code == 0, out
        assert out.strip().endswith("RESULT: PASS")


def test_unknown_fixture():
    with pytest.raises(UnknownFixture):
        fixture_document("nope")


def test_emit_command(capsys):
    code, out, _ = run_cli(["emit", "exterior1"], capsys)
    assert code == 0
    assert json.loads(out)["algebra"]["basis"] == [["1", 0], ["x", 1]]
    code, _, err = run_cli(["emit", "nope"], capsys)
    assert code == 2
    assert "unknown fixture" in err


def test_minimal_document(tmp_path, capsys):
    doc = {
        "ring": {"kind": "Z"},
        "algebra": {"basis": [["a", 0]], "kind": "ainfty", "operations": {}},
    }
    path = tmp_path / "min.json"
    path.write_text(serialize(doc))
    code, out, _ = run_cli(["validate", str(path)], capsys)
    assert code == 0


def test_degree_mismatch_names_the_entry():
    doc = {
        "ring": {"kind": "Z"},
        "algebra": {
            "basis": [["a", 0], ["b", 1]],
            "kind": "ainfty",
            "operations": {"2": [{"inputs": ["a", "a"], "output": {"b": "1"}}]},
        },
    }
    from ainfty.errors import DegreeMismatch

    with pytest.raises(DegreeMismatch) as err:
        parse(serialize(doc))
    assert "algebra.operations.2" in str(err.value)
    assert "('a', 'a')" in str(err.value)


def test_not_prime_ring():
    doc = {"ring": {"kind": "Zp", "p": 4}, "algebra": {"basis": []}}
    from ainfty.errors import NotPrime

    with pytest.raises(NotPrime):
        parse(json.dumps(doc))


def test_unknown_name_in_table():
    doc = {
        "ring": {"kind": "Z"},
        "algebra": {
            "basis": [["a", 0]],
            "kind": "ainfty",
            "operations": {"2": [{"inputs": ["a", "zz"], "output": {"a": "1"}}]},
        },
    }
    from ainfty.errors import UnknownName

    with pytest.raises(UnknownName):
        parse(json.dumps(doc))


def test_syntax_error_has_location():
    with pytest.raises(DocumentError) as err:
        parse("{ not json")
    assert "line 1" in str(err.value)


def test_malformed_options_are_input_errors(tmp_path, capsys):
    doc = fixture_document("dual_numbers")
    doc["options"] = {"length": "abc"}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, _, err = run_cli(["hh", str(path)], capsys)
    assert code == 2
    assert "options.length" in err


def test_missing_file_is_input_error(capsys):
    code, _, err = run_cli(["hh", "/does/not/exist.json"], capsys)
    assert code == 2
    assert "input error" in err


def test_hh_against_dense_oracle_mod2(tmp_path, capsys):
    # the spec's CLI example: dual numbers over Z/2, diagonal, length 3
    from ainfty.bimodules import diagonal_bimodule
    from ainfty.chains import HochschildComplex
    from helpers import load

    doc_dict = fixture_document("dual_numbers")
    doc_dict["ring"] = {"kind": "Zp", "p": 2}
    path = tmp_path / "dn2.json"
    path.write_text(serialize(doc_dict))
    code, out, _ = run_cli(
        ["hh", str(path), "--module", "diagonal", "--length", "3", "--degrees", "-2..4"],
        capsys,
    )
    assert code == 0
    got = {}
    for line in out.splitlines():
        if line.startswith("HH(diagonal)"):
            deg = int(line.split("degree ")[1].split(":")[0])
            got[deg] = line.split(": ")[1]
    for j in (-2, -1, 0):
        assert got[j] == "dim 0"

    doc = load("dual_numbers", p=2)
    M = diagonal_bimodule(doc.algebra, 4)
    cx = HochschildComplex(M, 3)
    basis = {}
    for n in range(4):
        for w in cx.words(n):
            basis.setdefault(cx.degree(w), []).append(w)
    for j in (1, 2, 3, 4):
        words = basis.get(j, [])
        out_rows = []
        dst = {w: i for i, w in enumerate(basis.get(j - 1, []))}
        dense_out = [[0] * len(words) for _ in dst] if dst else []
        for col, w in enumerate(words):
            for ww, c in cx.differential_word(w).items():
                if ww in dst:
                    dense_out[dst[ww]][col] = c
        src_in = basis.get(j + 1, [])
        idx = {w: i for i, w in enumerate(words)}
        dense_in = [[0] * len(src_in) for _ in words] if words else []
        for col, w in enumerate(src_in):
            for ww, c in cx.differential_word(w).items():
                if ww in idx:
                    dense_in[idx[ww]][col] = c
        r_out = dense_rank_modp(dense_out, 2) if dense_out else 0
        r_in = dense_rank_modp(dense_in, 2) if dense_in else 0
        dim = len(words) - r_out - r_in
        assert got[j] == f"dim {dim}", (j, got)


def test_verify_pass_and_corrupted_failure(tmp_path, capsys):
    path = tmp_path / "qi.json"
    path.write_text(serialize(fixture_document("quasi_iso_pair")))
    code, out, _ = run_cli(["verify", str(path)], capsys)
    assert code == 0
    assert "RESULT: PASS" in out

    bad = fixture_document("quasi_iso_pair")
    bad["morphisms"]["include"]["components"]["0,0"][0]["output"] = {
        "u": "1",
        "v": "1",
    }
    bad_path = tmp_path / "bad.json"
    bad_path.write_text(serialize(bad))
    code, out, _ = run_cli(["verify", str(bad_path)], capsys)
    assert code == 1
    assert "RESULT: FAIL (first failing identity: morphism equations [include])" in out


def test_reports_are_deterministic(tmp_path, capsys):
    path = tmp_path / "dn.json"
    path.write_text(serialize(fixture_document("dual_numbers")))
    outputs = []
    for _ in range(2):
        code, out, _ = run_cli(["verify", str(path), "--seed", "3"], capsys)
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]


def test_threads_do_not_change_reports(tmp_path, capsys, monkeypatch):
    path = tmp_path / "dn.json"
    path.write_text(serialize(fixture_document("dual_numbers")))
    _, base, _ = run_cli(["verify", str(path)], capsys)
    monkeypatch.setenv("AINFTY_THREADS", "4")
    _, threaded, _ = run_cli(["verify", str(path)], capsys)
    assert base == threaded


def test_negative_degree_range(tmp_path, capsys):
    path = tmp_path / "e2.json"
    path.write_text(serialize(fixture_document("exterior2")))
    code, out, _ = run_cli(
        ["hh", str(path), "--module", "diagonal", "--length", "3", "--degrees", "-2..0"],
        capsys,
    )
    assert code == 0
    assert "degree -2" in out and "degree 0" in out
    assert "degree 1" not in out


def test_csv_report(tmp_path, capsys):
    path = tmp_path / "dn.json"
    path.write_text(serialize(fixture_document("dual_numbers")))
    csv_path = tmp_path / "out.csv"
    code, _, _ = run_cli(
        ["hh", str(path), "--length", "3", "--csv", str(csv_path)], capsys
    )
    assert code == 0
    with open(csv_path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["object", "degree", "free_rank", "torsion", "verdict"]
    assert any(r[1] == "2" and r[2] == "1" and r[3] == "2" for r in rows[1:])


def test_cup_command(tmp_path, capsys):
    path = tmp_path / "dn.json"
    path.write_text(serialize(fixture_document("dual_numbers")))
    code, out, _ = run_cli(["cup", str(path)], capsys)
    assert code == 0
    assert "Leibniz" in out


def test_cup_command_without_cochains(tmp_path, capsys):
    path = tmp_path / "e1.json"
    path.write_text(serialize(fixture_document("exterior1")))
    code, _, err = run_cli(["cup", str(path)], capsys)
    assert code == 2
    assert "no cochains" in err


def test_spectral_command(tmp_path, capsys):
    path = tmp_path / "qi.json"
    path.write_text(serialize(fixture_document("quasi_iso_pair")))
    code, out, _ = run_cli(["spectral", str(path), "--module", "M", "--length", "3"], capsys)
    assert code == 0
    assert "comparison witnessed [include]" in out


def test_cohomology_command(tmp_path, capsys):
    path = tmp_path / "dn.json"
    path.write_text(serialize(fixture_document("dual_numbers")))
    code, out, _ = run_cli(["cohomology", str(path), "--length", "2"], capsys)
    assert code == 0
    assert "HH^*(diagonal)" in out


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ainfty.cli"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
