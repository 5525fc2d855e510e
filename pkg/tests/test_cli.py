import json

import numpy as np
import pytest

from opucz.cli import main, parse_region
from opucz.errors import UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_variance_limit_closed_print(capsys):
    code, out, _ = run(capsys, "variance-limit", "--s", "0", "--t", "0.5",
                       "--method", "closed")
    assert code == 0
    assert out.strip() == "0.266666666667"


def test_variance_limit_methods_agree(capsys):
    vals = []
    for method in ("closed", "series", "quadrature"):
        code, out, _ = run(capsys, "variance-limit", "--s", "1.5", "--t",
                           "2.0", "--method", method)
        assert code == 0
        vals.append(float(out))
    assert max(vals) - min(vals) < 1e-6
    assert vals[0] == pytest.approx(0.4038461538, abs=1e-9)


def test_kernel_free_case(capsys):
    code, out, _ = run(capsys, "kernel", "--alphas", "zero", "--n", "1",
                       "--z", "0.5", "--w", "0.5")
    assert code == 0
    lines = dict(line.split(" ", 1) for line in out.strip().splitlines())
    assert complex(lines["K"]) == pytest.approx(1.25)
    assert complex(lines["K01"]) == pytest.approx(0.5)
    assert complex(lines["K11"]) == pytest.approx(1.0)


def test_kernel_routes_match(capsys):
    outs = []
    for route in ("direct", "cd"):
        code, out, _ = run(capsys, "kernel", "--alphas", "constant:0.4",
                           "--n", "9", "--z", "0.3+0.2j", "--w", "-0.1",
                           "--route", route)
        assert code == 0
        outs.append(out)
    a = [complex(line.split()[1]) for line in outs[0].splitlines()]
    b = [complex(line.split()[1]) for line in outs[1].splitlines()]
    assert a == pytest.approx(b, rel=1e-9)


def test_intensity_at_origin(capsys):
    code, out, _ = run(capsys, "intensity", "--alphas", "zero", "--n", "5",
                       "--z", "0")
    assert code == 0
    assert float(out) == pytest.approx(1 / np.pi, abs=1e-12)


def test_intensity_limit_pair(capsys):
    code, out, _ = run(capsys, "intensity", "--limit", "--z", "0",
                       "--w", "0.5")
    assert code == 0
    assert float(out) == pytest.approx(0.0788053650551516, abs=1e-12)


def test_basis_report_decreasing_epsilon(capsys):
    code, out, _ = run(capsys, "basis", "--alphas", "decay:1:1", "--n", "12",
                       "--report")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,epsilon_k,nevai_proxy"
    eps = {int(row.split(",")[0]): float(row.split(",")[1])
           for row in lines[1:]}
    assert eps[12] < eps[2]


def test_simulate_artifacts_and_rerun(tmp_path, capsys):
    args = ["simulate", "--alphas", "zero", "--n", "12", "--model",
            "gaussian", "--region", "annulus:0:0.5", "--trials", "40",
            "--seed", "42"]
    code, _, _ = run(capsys, *args, "--out", str(tmp_path / "a"))
    assert code == 0
    code, _, _ = run(capsys, *args, "--out", str(tmp_path / "b"))
    assert code == 0

    a = (tmp_path / "a.counts.csv").read_bytes()
    b = (tmp_path / "b.counts.csv").read_bytes()
    assert a == b
    text = a.decode()
    assert text.startswith("trial,count\n")
    assert "\r" not in text
    assert text.endswith("\n") and not text.endswith("\n\n")
    assert len(text.strip().splitlines()) == 41  # header + one row per trial

    summary = json.loads((tmp_path / "a.summary.json").read_text())
    assert list(summary) == ["command", "config", "n", "trials", "seed",
                             "region", "mean", "variance", "se_mean",
                             "se_var", "excluded", "elapsed_seconds"]
    assert summary["command"] == "simulate"
    assert summary["n"] == 12 and summary["trials"] == 40
    assert summary["seed"] == 42 and summary["excluded"] == 0
    assert summary["region"] == "annulus:0:0.5"
    assert summary["config"]["alphas"] == "zero"


def test_simulate_thread_count_invariance(tmp_path, capsys, monkeypatch):
    args = ["simulate", "--alphas", "zero", "--n", "10", "--region",
            "annulus:0:0.6", "--trials", "30", "--seed", "7"]
    code, _, _ = run(capsys, *args, "--out", str(tmp_path / "t1"),
                     "--threads", "1")
    assert code == 0
    code, _, _ = run(capsys, *args, "--out", str(tmp_path / "t2"),
                     "--threads", "2")
    assert code == 0
    monkeypatch.setenv("OPUCZ_THREADS", "3")
    code, _, _ = run(capsys, *args, "--out", str(tmp_path / "t3"),
                     "--threads", "1")  # env var wins over the flag
    assert code == 0
    c1 = (tmp_path / "t1.counts.csv").read_bytes()
    assert c1 == (tmp_path / "t2.counts.csv").read_bytes()
    assert c1 == (tmp_path / "t3.counts.csv").read_bytes()
    s3 = json.loads((tmp_path / "t3.summary.json").read_text())
    assert s3["config"]["threads"] == 3


def test_simulate_config_round_trip(tmp_path, capsys):
    code, _, _ = run(capsys, "simulate", "--alphas", "constant:0.3", "--n",
                     "10", "--region", "annulus:0:0.7", "--trials", "30",
                     "--seed", "9", "--out", str(tmp_path / "orig"))
    assert code == 0
    code, _, _ = run(capsys, "simulate", "--config",
                     str(tmp_path / "orig.summary.json"), "--out",
                     str(tmp_path / "redo"))
    assert code == 0
    assert (tmp_path / "orig.counts.csv").read_bytes() == \
        (tmp_path / "redo.counts.csv").read_bytes()

    # explicit flags still beat the config file
    code, _, _ = run(capsys, "simulate", "--config",
                     str(tmp_path / "orig.summary.json"), "--seed", "10",
                     "--out", str(tmp_path / "reseed"))
    assert code == 0
    assert (tmp_path / "orig.counts.csv").read_bytes() != \
        (tmp_path / "reseed.counts.csv").read_bytes()


def test_convergence_artifacts(tmp_path, capsys):
    code, out, _ = run(capsys, "convergence", "--alphas", "zero", "--region",
                       "sector:0.5:0:pi/2", "--ns", "10,20", "--trials",
                       "40", "--seed", "5", "--out", str(tmp_path / "c"))
    assert code == 0
    csv = (tmp_path / "c.csv").read_text()
    header = "n,mean_abs_dev,var_over_n2,envelope_sqrtlogn,envelope_eps14"
    assert csv.splitlines()[0] == header
    assert out.splitlines()[0] == header
    rows = [line.split(",") for line in csv.strip().splitlines()[1:]]
    assert [int(r[0]) for r in rows] == [10, 20]
    for r in rows:
        for cell in r[1:]:
            assert np.isfinite(float(cell))

    svg = (tmp_path / "c.svg").read_text()
    assert svg.startswith("<svg")
    assert 'width="800"' in svg and 'height="600"' in svg
    assert svg.count("<polyline") == 3
    assert "degree n" in svg and "count deviation" in svg

    code, _, _ = run(capsys, "convergence", "--config",
                     str(tmp_path / "c.summary.json"), "--out",
                     str(tmp_path / "c2"))
    assert code == 0
    assert (tmp_path / "c.csv").read_bytes() == \
        (tmp_path / "c2.csv").read_bytes()


def test_usage_errors_exit_2(tmp_path, capsys):
    cases = [
        ("variance-limit", "--s", "0.5"),  # missing --t
        ("variance-limit", "--s", "0.5", "--t", "1.5"),  # touches circle
        ("simulate", "--alphas", "zero", "--n", "5", "--region",
         "annulus:0.5:0.2", "--trials", "4", "--out", str(tmp_path / "x")),
        ("simulate", "--alphas", "zero", "--n", "5", "--region",
         "blob:1:2", "--trials", "4", "--out", str(tmp_path / "x")),
        ("simulate", "--alphas", "zero", "--n", "5", "--region",
         "annulus:0:0.5", "--trials", "4", "--model", "cauchy", "--out",
         str(tmp_path / "x")),
        ("convergence", "--alphas", "zero", "--region", "sector:0.5:0:1",
         "--ns", "10,abc", "--trials", "4", "--out", str(tmp_path / "x")),
        ("intensity", "--alphas", "zero", "--n", "4", "--z", "spam"),
        ("basis", "--alphas", "nonsense:3", "--n", "4"),
    ]
    for argv in cases:
        code, _, err = run(capsys, *argv)
        assert code == 2, argv
        assert "usage error" in err


def test_unknown_flag_and_subcommand_exit_2(capsys):
    assert main(["variance-limit", "--nope", "1"]) == 2
    assert main(["frobnicate"]) == 2
    capsys.readouterr()


def test_computation_error_exit_1(capsys):
    code, _, err = run(capsys, "kernel", "--alphas", "zero", "--n", "3",
                       "--z", "0.5", "--w", "2", "--route", "cd")
    assert code == 1
    assert "NearDiagonalSingularity" in err


def test_bad_threads_env(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("OPUCZ_THREADS", "many")
    code, _, err = run(capsys, "simulate", "--alphas", "zero", "--n", "5",
                       "--region", "annulus:0:0.5", "--trials", "4",
                       "--out", str(tmp_path / "x"))
    assert code == 2
    assert "OPUCZ_THREADS" in err


def test_region_grammar_total():
    assert parse_region("annulus:0:0.5").params == (0.0, 0.5)
    sec = parse_region("sector:0.5:0:pi/2")
    assert sec.params[2] == pytest.approx(np.pi / 2)
    for bad in ("annulus:1", "annulus:0:0.5:9", "sector:0.5:0",
                "sector:0.5:0:junk", "blob:1:2", "annulus:x:0.5"):
        with pytest.raises(UsageError):
            parse_region(bad)
