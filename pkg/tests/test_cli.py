import csv
import io

import numpy as np
import pytest
from scipy.signal import find_peaks

from darknode import output, scenarios
from darknode.cli import main
from darknode.units import default_params

P = default_params()


def _body(path):
    return "".join(line for line in open(path) if not line.startswith("#"))


def _table(path):
    rows = list(csv.reader(io.StringIO(_body(path))))
    return rows[0], np.array(rows[1:], dtype=float)


def test_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert all(name in out for name in scenarios.SCENARIOS)


def test_usage_errors(tmp_path, capsys):
    assert main([]) == 2
    assert main(["run", "no_such_scenario"]) == 2
    assert main(["run", "fig4_f", "--jobs", "0"]) == 2
    assert main(["run", "fig4_f", "--points", "1", "--out", str(tmp_path)]) == 2
    assert main(["run", "fig4_f", "--config", str(tmp_path / "missing.toml")]) == 2
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert main(["run", "fig4_f", "--out", str(blocker / "sub")]) == 2


def test_run_writes_csv_and_script(tmp_path):
    assert main(["run", "fig6_constv", "--points", "12", "--out", str(tmp_path)]) == 0
    text = (tmp_path / "fig6_constv.csv").read_text()
    for key in ("params_hash", "git", "tol", "backend", "timestamp"):
        assert f"# {key}:" in text
    header, data = _table(tmp_path / "fig6_constv.csv")
    assert header == list(scenarios.SCENARIOS["fig6_constv"].columns)
    assert data.shape == (12, len(header))
    assert ((data[:, 1] >= 0) & (data[:, 1] <= 1 + 1e-9)).all()
    gp = (tmp_path / "fig6_constv.gp").read_text()
    assert "fig6_constv.csv" in gp and "P_lz" in gp


def test_deterministic_across_runs_and_jobs(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["run", "fig7_harmonic", "--points", "8", "--out", str(a)]) == 0
    assert main(["run", "fig7_harmonic", "--points", "8", "--out", str(b), "--jobs", "2"]) == 0
    assert _body(a / "fig7_harmonic.csv") == _body(b / "fig7_harmonic.csv")


def test_config_overrides_and_output_path(tmp_path):
    cfg = tmp_path / "run.toml"
    target = tmp_path / "custom" / "h.csv"
    cfg.write_text(f'[scenario.fig5_h]\npoints = 21\nalpha0 = 10.0\noutput_path = "{target}"\n')
    assert main(["run", "fig5_h", "--config", str(cfg)]) == 0
    _, data = _table(target)
    assert len(data) == 21
    assert "10.0" in target.read_text().split("# options")[0]


def test_emit_config(capsys, tmp_path):
    cfg = tmp_path / "run.toml"
    cfg.write_text("[params]\ng0 = 9.6525\n")
    assert main(["emit-config", "--config", str(cfg)]) == 0
    assert "g0 = 9.6525" in capsys.readouterr().out


def test_energies_scenario():
    res = scenarios.run("fig3_energies", P)
    assert res.column("z")[0] == 0.25
    assert res.column("z")[-1] == pytest.approx(0.25 + 0.14 * 20)
    assert (res.column("E0") == 0).all()
    assert res.column("E_plus") == pytest.approx(-res.column("E_minus"))


def test_h_scenario_symmetric_two_peaks():
    res = scenarios.run("fig5_h", P)
    h = res.column("h")
    idx, _ = find_peaks(h)
    assert len(idx) == 2
    assert h == pytest.approx(h[::-1], rel=1e-9, abs=1e-15)


def test_small_term_scenario():
    res = scenarios.run("appxC_smallterm", P, options={"v": 1.2e-2})
    s = res.column("S")
    assert s.max() == pytest.approx(2.0, abs=1e-4) and s.min() >= 0
    assert np.count_nonzero(np.diff(np.sign(np.diff(s)))) > 10


def test_unknown_option():
    with pytest.raises(KeyError):
        scenarios.run("fig6_constv", P, points=3, options={"theta_deg": 30.0})


def test_csv_body_reproducible():
    a = scenarios.run("threshold_report", P, points=30)
    b = scenarios.run("threshold_report", P, points=30)
    assert output.csv_body(a) == output.csv_body(b)
    assert output.params_hash(a) == output.params_hash(b)


def test_constv_csv_valleys(sweeps):
    res = sweeps["fig6_constv"]
    v, p = res.column("v"), res.column("P_ode")
    idx, _ = find_peaks(-p, prominence=0.05)
    minima = v[idx]
    assert len(minima) == 2, f"valleys at {np.round(minima, 4).tolist()}"
    assert 0.014 <= minima[0] <= 0.020 and 0.042 <= minima[1] <= 0.056


@pytest.mark.slow
@pytest.mark.parametrize("name", [n for n in scenarios.SCENARIOS if n != "fig8_ensemble"])
def test_every_scenario_within_budget(name, sweeps):
    import time

    start = time.perf_counter()
    scenarios.run(name, P)
    assert time.perf_counter() - start < 300
