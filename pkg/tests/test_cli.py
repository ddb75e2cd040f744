import csv
import hashlib
import json
import math
import os

import numpy as np
import numpy.testing as npt
import pytest

from phantomfourier.cli import main
from phantomfourier.functions import make_function, parse_expression


def run(args):
    return main(args)


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


def read_csv_rows(path):
    with open(path) as fh:
        rows = [r for r in csv.reader(line for line in fh if not line.startswith("#"))]
    return rows[0], rows[1:]


class TestFunctionRegistry:
    def test_named_functions(self):
        assert make_function("sawtooth")(math.pi) == 0.0
        assert make_function("linear")(2.0) == 3.0
        npt.assert_allclose(make_function("sin075")(2.0), math.sin(1.5))
        npt.assert_allclose(make_function("exp002")(0.0), 0.02)

    def test_unknown_rejected(self):
        with pytest.raises(ValueError):
            make_function("mystery")

    def test_expr_parsing(self):
        f = parse_expression("sin(0.75*t) + 0.5*cos(t)^2 - pi/4")
        t = 1.3
        npt.assert_allclose(f(t), math.sin(0.75 * t) + 0.5 * math.cos(t) ** 2 - math.pi / 4, rtol=1e-12)

    def test_expr_via_registry_prefix(self):
        f = make_function("expr:exp(t/2)*0.1")
        npt.assert_allclose(f(2.0), 0.1 * math.e, rtol=1e-12)

    def test_expr_has_no_analytic_derivatives(self):
        f = make_function("expr:sin(t)")
        assert not f.has_derivatives
        with pytest.raises(ValueError):
            f.deriv(1)

    @pytest.mark.parametrize("bad", ["sin(", "2 +* 3", "foo(t)", "t t"])
    def test_expr_rejects_malformed(self, bad):
        with pytest.raises(ValueError):
            parse_expression(bad)

    def test_expr_power_precedence(self):
        # exponent binds tighter than unary minus, right-associative
        npt.assert_allclose(parse_expression("-t^2")(3.0), -9.0)
        npt.assert_allclose(parse_expression("2^-1*t")(4.0), 2.0)
        npt.assert_allclose(parse_expression("2^3^2")(0.0), 512.0)


class TestSeriesCommand:
    def test_blended_decay_near_two(self, tmp_path):
        out = str(tmp_path / "s")
        rc = run(["series", "--function", "sawtooth", "--alpha", "1.5708", "--k", "1",
                  "--n", "64", "--out", out])
        assert rc == 0
        summary = read_json(os.path.join(out, "decay_summary.json"))
        assert abs(summary["decay_order"] - 2.0) < 0.3
        header, rows = read_csv_rows(os.path.join(out, "coefficients.csv"))
        assert header == ["n", "a_n", "b_n"]
        assert rows[0][0] == "0"
        assert len(rows) == 65

    def test_no_blend_decay_near_one(self, tmp_path):
        out = str(tmp_path / "raw")
        rc = run(["series", "--function", "sawtooth", "--k", "1", "--n", "64",
                  "--no-blend", "--out", out])
        assert rc == 0
        summary = read_json(os.path.join(out, "decay_summary.json"))
        assert abs(summary["decay_order"] - 1.0) < 0.2

    def test_alpha_zero_exits_two(self, tmp_path):
        rc = run(["series", "--function", "sawtooth", "--alpha", "0", "--k", "1",
                  "--n", "64", "--out", str(tmp_path / "bad")])
        assert rc == 2

    def test_missing_alpha_exits_two(self, tmp_path):
        rc = run(["series", "--function", "sawtooth", "--out", str(tmp_path / "bad2")])
        assert rc == 2


class TestInterpCommand:
    def test_c1_reduction_factor_in_reference_bands(self, tmp_path):
        out = str(tmp_path / "i")
        rc = run(["interp", "--function", "linear", "--n", "9", "--k", "1",
                  "--strategy", "c1", "--deriv", "analytic", "--out", out])
        assert rc == 0
        s = read_json(os.path.join(out, "summary.json"))
        factor = s["reduction_factor"]
        assert (5.2 <= factor <= 8.6) or (6.6 <= factor <= 10.9)

    def test_baseline_has_no_reduction_field(self, tmp_path):
        out = str(tmp_path / "b")
        rc = run(["interp", "--function", "linear", "--n", "9", "--strategy", "none",
                  "--out", out])
        assert rc == 0
        s = read_json(os.path.join(out, "summary.json"))
        assert "reduction_factor" not in s
        assert s["max_error"] > 0

    def test_k2_phantom_values_echoed(self, tmp_path):
        out = str(tmp_path / "k2")
        rc = run(["interp", "--function", "linear", "--n", "9", "--k", "2",
                  "--strategy", "c1", "--out", out])
        assert rc == 0
        s = read_json(os.path.join(out, "summary.json"))
        npt.assert_allclose(s["phantom_values"], [8.4, 6.3, 3.7, 1.6], atol=0.05)

    def test_even_n_exits_two(self, tmp_path):
        rc = run(["interp", "--function", "linear", "--n", "8", "--strategy", "none",
                  "--out", str(tmp_path / "e")])
        assert rc == 2


@pytest.fixture(scope="module")
def table_out(tmp_path_factory):
    out = str(tmp_path_factory.mktemp("table"))
    rc = run(["table", "--budget", "2000", "--out", out])
    assert rc == 0
    return out


class TestTableCommand:
    def test_emits_six_tables_plus_comparison(self, table_out):
        names = sorted(os.listdir(table_out))
        tables = [n for n in names if n.startswith("table_")]
        assert len(tables) == 6
        assert "comparison.csv" in names
        assert "manifest.json" in names
        assert "records.json" in names  # full-record JSON variant

    def test_comparison_contains_reference_cells(self, table_out):
        header, rows = read_csv_rows(os.path.join(table_out, "comparison.csv"))
        cells = {(r[0], r[1], r[2], r[3]): r for r in rows}
        assert float(cells[("linear", "1", "5", "C0")][4]) == 2.5
        assert float(cells[("sin075", "2", "13", "selected")][4]) == 3428.6

    def test_table_layout(self, table_out):
        header, rows = read_csv_rows(os.path.join(table_out, "table_linear_k1.csv"))
        assert header == ["N", "C0", "C1", "C2", "selected"]
        assert [r[0] for r in rows] == ["5", "9", "13"]

    def test_manifest_lists_all_outputs_with_hashes(self, table_out):
        man = read_json(os.path.join(table_out, "manifest.json"))
        listed = {e["path"]: e["sha256"] for e in man["outputs"]}
        for name in os.listdir(table_out):
            assert name in listed
            if name == "manifest.json":
                continue
            with open(os.path.join(table_out, name), "rb") as fh:
                assert hashlib.sha256(fh.read()).hexdigest() == listed[name]

    def test_plot_csvs_are_two_numeric_columns(self, tmp_path):
        out = str(tmp_path / "plots")
        run(["interp", "--function", "linear", "--n", "9", "--k", "1",
             "--strategy", "c1", "--out", out])
        for name in ("epsilon_grid.csv", "function_grid.csv", "polynomial_grid.csv"):
            header, rows = read_csv_rows(os.path.join(out, name))
            assert len(header) == 2
            arr = np.array(rows, dtype=float)  # parses => C-locale decimals
            assert arr.shape[1] == 2


class TestOptimizeCommand:
    def test_search_mode(self, tmp_path):
        out = str(tmp_path / "opt")
        rc = run(["optimize", "--function", "linear", "--n", "9", "--k", "2",
                  "--seed", "7", "--out", out])
        assert rc == 0
        s = read_json(os.path.join(out, "selection.json"))
        assert s["ratio"] >= 300.0
        assert s["seed"] == 7

    def test_eval_values_mode(self, tmp_path):
        out = str(tmp_path / "ev")
        rc = run(["optimize", "--function", "linear", "--n", "9", "--k", "2",
                  "--eval-values", "9.525,7.28,2.665,0.46", "--out", out])
        assert rc == 0
        s = read_json(os.path.join(out, "selection.json"))
        assert s["mode"] == "evaluate"
        assert s["ratio"] >= 300.0

    def test_zero_budget_exits_two(self, tmp_path):
        rc = run(["optimize", "--function", "linear", "--n", "9", "--k", "2",
                  "--budget", "0", "--out", str(tmp_path / "zb")])
        assert rc == 2

    def test_wrong_eval_values_count_exits_two(self, tmp_path):
        rc = run(["optimize", "--function", "linear", "--n", "9", "--k", "2",
                  "--eval-values", "1.0,2.0", "--out", str(tmp_path / "wc")])
        assert rc == 2


class TestReproducibility:
    def test_byte_identical_reruns(self, tmp_path):
        outs = []
        for name in ("a", "b"):
            out = str(tmp_path / name)
            rc = run(["optimize", "--function", "linear", "--n", "9", "--k", "1",
                      "--seed", "11", "--budget", "3000", "--out", out])
            assert rc == 0
            outs.append(out)
        for fname in sorted(os.listdir(outs[0])):
            with open(os.path.join(outs[0], fname), "rb") as fh:
                h0 = hashlib.sha256(fh.read()).hexdigest()
            with open(os.path.join(outs[1], fname), "rb") as fh:
                h1 = hashlib.sha256(fh.read()).hexdigest()
            assert h0 == h1, fname

    def test_threaded_table_matches_serial(self, tmp_path, monkeypatch):
        serial, threaded = str(tmp_path / "s"), str(tmp_path / "t")
        monkeypatch.setenv("PHANTOM_THREADS", "1")
        run(["table", "--functions", "linear", "--strategies", "C0,C1",
             "--budget", "2000", "--out", serial])
        monkeypatch.setenv("PHANTOM_THREADS", "4")
        run(["table", "--functions", "linear", "--strategies", "C0,C1",
             "--budget", "2000", "--out", threaded])
        with open(os.path.join(serial, "table_linear_k1.csv"), "rb") as fh:
            a = fh.read()
        with open(os.path.join(threaded, "table_linear_k1.csv"), "rb") as fh:
            b = fh.read()
        assert a == b
