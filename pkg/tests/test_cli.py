import csv
import json

import numpy as np
import pytest

from mfssa.cli import main


def write_dataset(path, N=30, n_sites=40, seed=0):
    rng = np.random.default_rng(seed)
    sites = np.linspace(0, 1, n_sites)
    t = np.arange(N)
    values = np.sin(2 * np.pi * t / 10)[None, :] * np.sin(np.pi * sites)[:, None]
    values = values + 0.1 * rng.standard_normal((n_sites, N))
    data = {
        "variables": [
            {
                "name": "curves",
                "domain": {"kind": "interval", "bounds": [0.0, 1.0]},
                "basis": {"kind": "bspline", "df": 8, "degree": 3},
                "grid": sites.tolist(),
                "values": values.T.tolist(),
            }
        ]
    }
    path.write_text(json.dumps(data))
    return data


class TestAnalyze:
    def test_writes_decomposition_and_plotdata(self, tmp_path):
        inp = tmp_path / "data.json"
        write_dataset(inp)
        out = tmp_path / "out"
        code = main(
            ["analyze", "--input", str(inp), "--lag", "5", "--out", str(out)]
        )
        assert code == 0
        dec = json.loads((out / "decomposition.json").read_text())
        assert dec["L"] == 5
        assert len(dec["sigma"]) >= 1
        plot = json.loads((out / "plotdata.json").read_text())
        assert plot["scree"]["sigma"] == dec["sigma"]
        with open(out / "wcorrelation.csv", newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0][0] == "component"
        assert len(rows) == len(rows[0])  # header plus square matrix

    def test_groups_and_residual_outputs(self, tmp_path):
        inp = tmp_path / "data.json"
        write_dataset(inp)
        out = tmp_path / "out"
        code = main(
            [
                "analyze",
                "--input",
                str(inp),
                "--lag",
                "5",
                "--groups",
                "1;2,3",
                "--residual",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        rec = json.loads((out / "reconstruction_2_3.json").read_text())
        assert rec["group"] == "2,3"
        assert 0 <= rec["share"] <= 1
        assert (out / "reconstruction_residual.json").exists()
        with open(out / "wcorrelation_groups.csv", newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0][1:] == ["1", "2,3", "residual"]

    def test_normalize_writes_record(self, tmp_path):
        inp = tmp_path / "data.json"
        write_dataset(inp)
        out = tmp_path / "out"
        assert (
            main(
                [
                    "analyze",
                    "--input",
                    str(inp),
                    "--lag",
                    "4",
                    "--normalize",
                    "--out",
                    str(out),
                ]
            )
            == 0
        )
        record = json.loads((out / "normalization.json").read_text())
        assert len(record["scales"]) == 1
        assert record["scales"][0] > 0

    def test_csv_input(self, tmp_path):
        sites = np.linspace(0, 1, 12)
        vals = np.sin(np.outer(sites, np.arange(8)))
        lines = ["site," + ",".join(f"t{i}" for i in range(8))]
        for s, row in zip(sites, vals):
            lines.append(",".join(f"{v!s}" for v in [s, *row]))
        inp = tmp_path / "data.csv"
        inp.write_text("\n".join(lines))
        out = tmp_path / "out"
        assert main(["analyze", "--input", str(inp), "--lag", "3", "--out", str(out)]) == 0
        assert (out / "decomposition.json").exists()

    def test_missing_input_is_an_error(self, tmp_path, capsys):
        code = main(
            ["analyze", "--input", str(tmp_path / "no.json"), "--lag", "3", "--out", str(tmp_path)]
        )
        assert code == 1
        assert "error" in capsys.readouterr().err

    def test_bad_groups_is_an_error(self, tmp_path, capsys):
        inp = tmp_path / "data.json"
        write_dataset(inp)
        code = main(
            [
                "analyze",
                "--input",
                str(inp),
                "--lag",
                "5",
                "--groups",
                "1;1,2",
                "--out",
                str(tmp_path / "out"),
            ]
        )
        assert code == 1
        assert "overlap" in capsys.readouterr().err


class TestSimulate:
    def test_norm_check(self, capsys):
        assert main(["simulate", "--norm-check"]) == 0
        out = capsys.readouterr().out
        assert "far1_05" in out
        assert "0.250000000000" in out

    def test_desk_preset_writes_csv(self, tmp_path, capsys):
        out = tmp_path / "rmse.csv"
        code = main(
            [
                "--seed",
                "7",
                "simulate",
                "--preset",
                "desk",
                "--replicates",
                "2",
                "--noise",
                "white",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        with open(out, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert {r["method"] for r in rows} == {
            "mfssa",
            "hmfssa",
            "fssa_per_variable",
            "mssa_horizontal",
        }
        assert all(r["noise"] == "white" for r in rows)
        assert all(r["seed"] == "7" for r in rows)


class TestParser:
    def test_missing_subcommand(self, capsys):
        with pytest.raises(SystemExit):
            main([])

    def test_unknown_noise_rejected_by_parser(self):
        with pytest.raises(SystemExit):
            main(["simulate", "--noise", "pink"])
