import csv
import json
import subprocess
import sys

import pytest

from bvft import cli


def write_config(path, **kw):
    cfg = {"families": [{"family": "exp", "lambda": [1.0]}],
           "x_grid": {"min": 0.1, "max": 10.0, "points_per_decade": 4},
           "checks": ["fubini"], "output_dir": "out"}
    cfg.update(kw)
    path.write_text(json.dumps(cfg))
    return path


def read_summary(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_fubini_row(tmp_path):
    cfg = write_config(tmp_path / "c.json")
    assert cli.main(["run", "--config", str(cfg)]) == 0
    rows = read_summary(tmp_path / "out" / "summary.csv")
    assert len(rows) == 1
    row = rows[0]
    assert row["check"] == "fubini" and row["verdict"] == "yes"
    assert float(row["value"]) <= 1e-6
    assert row["paper_ref"] == cli.PAPER_REF["fubini"]


def test_file_count_contract(tmp_path):
    # loose outer rtol: the contract is about files, not digits
    cfg = write_config(tmp_path / "c.json", checks=["thm2"], tolerances={"rtol": 1e-4},
                       families=[{"family": "exp"}, {"family": "triangle"}])
    assert cli.main(["run", "--config", str(cfg)]) == 0
    out = tmp_path / "out"
    assert len(list(out.glob("*.json"))) == 2
    assert [p.name for p in out.glob("*.csv")] == ["summary.csv"]
    rep = json.loads((out / "exp_lam1.0__thm2.json").read_text())
    assert set(rep) >= {"function", "norms", "ratios", "verdict", "grids", "paper_ref"}
    assert (out / rep["grids"]["residual"]).exists()
    header = (out / rep["grids"]["residual"]).read_text().splitlines()[0]
    assert header == "x,value,abs_error_estimate,status,evaluations"


@pytest.mark.parametrize("patch", [
    {"checks": []},
    {"checks": ["thm9"]},
    {"checks": ["thm1", "thm1"]},
    {"families": [{"family": "sawtooth"}]},
    {"families": [{"family": "exp", "lambda": [-1]}]},
    {"x_grid": {"min": 0.0, "max": 1.0, "points_per_decade": 10}},
    {"x_grid": {"min": 0.1, "max": 1.0, "points_per_decade": 3}},
    {"tolerances": {"tol": 1e-8, "speed": 3}},
    {"colour": "blue"},
])
def test_bad_config_exit_2(tmp_path, patch):
    cfg = write_config(tmp_path / "c.json", **patch)
    assert cli.main(["run", "--config", str(cfg)]) == 2
    assert not (tmp_path / "out").exists()


def test_missing_and_malformed_config(tmp_path):
    assert cli.main(["run", "--config", str(tmp_path / "nope.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["run", "--config", str(bad)]) == 2


def test_output_dir_relative_to_config(tmp_path, monkeypatch):
    sub = tmp_path / "cfgs"
    sub.mkdir()
    cfg = cli.ExperimentConfig.load(write_config(sub / "c.json"))
    assert cfg.output_dir == sub / "out"


def test_grid_points():
    g = cli.XGrid(1e-2, 1e2, 25)
    p = g.points()
    assert p.size == 101 and p[0] == pytest.approx(1e-2) and p[-1] == pytest.approx(1e2)


def test_worker_count(monkeypatch):
    monkeypatch.setenv("BVFT_THREADS", "3")
    assert cli.worker_count() == 3
    monkeypatch.setenv("BVFT_THREADS", "-1")
    with pytest.raises(cli.ConfigError):
        cli.worker_count()


def test_summary_independent_of_workers(tmp_path):
    cfg_path = write_config(tmp_path / "c.json", checks=["fubini", "thm2"],
                            families=[{"family": "exp", "lambda": [0.5, 2.0]}])
    cfg = cli.ExperimentConfig.load(cfg_path)
    cli.run(cfg, workers=1)
    one = (cfg.output_dir / "summary.csv").read_bytes()
    cli.run(cfg, workers=2)
    two = (cfg.output_dir / "summary.csv").read_bytes()
    assert one == two
    assert len(read_summary(cfg.output_dir / "summary.csv")) == 2 * (1 + 4)


def test_families_list(capsys):
    assert cli.main(["families", "list"]) == 0
    out = capsys.readouterr().out.split("\n")
    assert [line.split("\t")[0] for line in out if line] == ["exp", "triangle", "gaussian", "rational",
                                                             "log_decay"]


def test_transform(capsys):
    assert cli.main(["transform", "--family", "exp", "--kind", "cosine", "--x", "1"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert abs(d["value"] - 0.5) < 1e-12 and d["status"] == "converged"
    assert cli.main(["transform", "--family", "nope", "--kind", "sine", "--x", "1"]) == 2


def test_report_summarize(tmp_path, capsys):
    cfg = write_config(tmp_path / "c.json")
    cli.main(["run", "--config", str(cfg)])
    capsys.readouterr()
    assert cli.main(["report", "summarize", str(tmp_path / "out")]) == 0
    text = capsys.readouterr().out
    assert "fubini" in text and "verdicts: yes=1" in text
    assert cli.main(["report", "summarize", str(tmp_path / "missing")]) == 2


def test_module_entry_point(tmp_path):
    r = subprocess.run([sys.executable, "-m", "bvft", "families", "list"], capture_output=True, text=True)
    assert r.returncode == 0 and "gaussian" in r.stdout
    r = subprocess.run([sys.executable, "-m", "bvft", "run"], capture_output=True, text=True)
    assert r.returncode == 2
