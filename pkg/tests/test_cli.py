from __future__ import annotations

import argparse
import csv
import io
import json

import pytest

from lommel_uniform.cli import (
    CSV_COLUMNS,
    REGION_COLUMNS,
    build_parser,
    main,
    parse_complex,
    parse_sign,
    request_from_args,
    run,
)
from lommel_uniform.evaluator import Evaluator


def _o4(z: complex) -> complex:
    return 192 / z**5 + 16 / z**3 + 1 / z


def _json(capsys: pytest.CaptureFixture[str]) -> dict:
    return json.loads(capsys.readouterr().out)


class TestParsing:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("200+0i", 200 + 0j),
            ("0.8-0.3i", 0.8 - 0.3j),
            ("-1.05", -1.05 + 0j),
            ("2i", 2j),
            ("-i", -1j),
            ("i", 1j),
            ("1e-3+2.5e2j", 1e-3 + 250j),
        ],
    )
    def test_complex(self, text: str, expected: complex):
        assert parse_complex(text) == expected

    def test_bad_complex(self):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_complex("two")

    @pytest.mark.parametrize("text, expected", [("+", 1), ("-1", -1), ("1", 1), ("-", -1)])
    def test_sign(self, text: str, expected: int):
        assert parse_sign(text) == expected

    def test_request(self):
        args = build_parser().parse_args(
            ["eval", "--function", "S", "--mu", "0.3", "--nu", "100", "--z", "200"]
        )
        request = request_from_args(args)
        assert request.subcommand == "eval"
        assert request.mu == 0.3
        assert request.z == 200
        assert request.method == "auto"

    def test_compare_defaults_to_expansion(self):
        args = build_parser().parse_args(["compare", "--function", "S", "--nu", "100", "--z", "2"])
        assert request_from_args(args).method == "asymptotic"


class TestEval:
    def test_json_document(self, capsys):
        argv = ["eval", "--function", "neumannO", "--n", "4", "--z", "0.8-0.3i"]
        assert main(argv) == 0
        doc = _json(capsys)
        assert doc["meta"]["command"] == argv
        assert "version" in doc["meta"]
        (row,) = doc["data"]
        assert complex(row["re(val)"], row["im(val)"]) == pytest.approx(_o4(0.8 - 0.3j), rel=1e-14)
        assert row["method"] == "series"

    def test_csv_matches_json(self, capsys):
        base = ["eval", "--function", "neumannO", "--n", "3", "--grid=0.5,1.5,-0.5,0.5,3,3"]
        assert main([*base, "--format", "csv"]) == 0
        reader = csv.DictReader(io.StringIO(capsys.readouterr().out))
        assert tuple(reader.fieldnames or ()) == CSV_COLUMNS
        csv_rows = list(reader)
        assert main(base) == 0
        json_rows = _json(capsys)["data"]
        assert len(csv_rows) == len(json_rows) == 9
        for text, row in zip(csv_rows, json_rows):
            assert float(text["re(val)"]) == row["re(val)"]
            assert float(text["im(val)"]) == row["im(val)"]

    def test_grid_error_rows(self, capsys):
        argv = ["eval", "--function", "neumannO", "--n", "2", "--grid=-1,1,0,0,3,1"]
        assert main(argv) == 0
        rows = _json(capsys)["data"]
        assert rows[1]["method"] == "error:DomainError"
        assert rows[0]["re(val)"] == pytest.approx(-5.0)

    def test_single_point_domain_error(self, capsys):
        assert main(["eval", "--function", "neumannO", "--n", "2", "--z", "0"]) == 3
        assert capsys.readouterr().out == ""

    def test_strict(self, capsys):
        argv = ["eval", "--function", "S", "--mu", "0.3", "--nu", "100", "--z", "200"]
        assert main([*argv, "--tol", "0", "--strict"]) == 4
        assert len(_json(capsys)["data"]) == 1
        assert main([*argv, "--tol", "0"]) == 0

    def test_output_file(self, tmp_path, capsys):
        out = tmp_path / "values.csv"
        argv = ["eval", "--function", "Gi", "--z", "0.5", "--format", "csv", "--out", str(out)]
        assert main(argv) == 0
        assert capsys.readouterr().out == ""
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == 2

    def test_random_samples(self, capsys):
        argv = [
            "eval", "--function", "neumannO", "--n", "5",
            "--grid=1,2,-1,1,2,2", "--samples", "7", "--seed", "3",
        ]
        assert main(argv) == 0
        rows = _json(capsys)["data"]
        assert len(rows) == 7
        assert all(1 <= row["re(z)"] <= 2 and -1 <= row["im(z)"] <= 1 for row in rows)


class TestUsage:
    @pytest.mark.parametrize(
        "argv",
        [
            ["eval", "--function", "S", "--nu", "100"],
            ["eval", "--function", "besselJ", "--z", "1"],
            ["eval", "--function", "S", "--z", "1", "--sign", "2"],
            ["regionmap", "--z", "1", "--samples", "3"],
            ["coeffs"],
        ],
    )
    def test_exit_code(self, argv: list[str]):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 2

    def test_missing_order_is_configuration_error(self, capsys):
        assert main(["eval", "--function", "struveH", "--z", "2"]) == 2


class TestCompare:
    def test_struve_against_reference(self, capsys):
        argv = ["compare", "--function", "struveH", "--nu", "4.5", "--z", "2"]
        argv += ["--method", "series"]
        assert main(argv) == 0
        doc = _json(capsys)
        (row,) = doc["data"]
        assert row["rel_err"] < 1e-12
        assert doc["meta"]["max_rel_err"] == row["rel_err"]


class TestRegionMap:
    def test_cut_tube(self, capsys):
        assert main(["regionmap", "--delta", "0.1", "--z=-1.05"]) == 0
        (row,) = _json(capsys)["data"]
        assert row["in_S_delta"] is False

    def test_columns(self, capsys):
        assert main(["regionmap", "--grid=0.2,2,-1,1,3,2", "--format", "csv"]) == 0
        reader = csv.DictReader(io.StringIO(capsys.readouterr().out))
        assert tuple(reader.fieldnames or ()) == REGION_COLUMNS
        assert len(list(reader)) == 6


class TestCoeffs:
    def test_a_sequences(self, capsys):
        assert main(["coeffs", "--family", "a", "--s", "1"]) == 0
        rows = _json(capsys)["data"]
        assert [(row["family"], row["form"]) for row in rows] == [
            ("a", "5/72"),
            ("a_tilde", "-7/72"),
        ]

    def test_a_needs_positive_index(self):
        assert main(["coeffs", "--family", "a", "--s", "0"]) == 2

    def test_depth_from_environment(self, monkeypatch, capsys, clean_settings_cache):
        monkeypatch.setenv("LOMMEL_COEFF_DEPTH", "10")
        assert main(["coeffs", "--family", "E", "--s", "1"]) == 0
        assert _json(capsys)["meta"]["depth"] == 10

    def test_run_with_shared_evaluator(self, evaluator: Evaluator):
        args = build_parser().parse_args(["coeffs", "--family", "Gminus", "--s", "1"])
        report = run(request_from_args(args), evaluator)
        assert report.rows[0]["family"] == "Gminus"
        assert report.meta["depth"] == evaluator.settings.coeff_depth
