import subprocess
import sys

import numpy as np
import pytest

from cavitymems.cli import main
from cavitymems.dynamics import reduced_state_closed_form
from cavitymems.frontier import mems_frontier_value
from cavitymems.measures import bell_max, concurrence, linear_entropy


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def parse(text):
    meta = [l for l in text.splitlines() if l.startswith("#")]
    body = [l for l in text.splitlines() if l and not l.startswith("#")]
    header = body[0].split(",")
    rows = [l.split(",") for l in body[1:]]
    return meta, header, rows


def test_evolve_matches_library(capsys):
    code, out, _ = run(capsys, "evolve", "--chi", "0.7", "--theta", "2.1")
    assert code == 0
    meta, header, rows = parse(out)
    assert any("command: evolve" in l for l in meta)
    assert header[:2] == ["chi", "theta"]
    assert header[-3:] == ["concurrence", "linear_entropy", "bell_max"]
    assert len(header) == 2 + 32 + 3
    row = dict(zip(header, rows[0]))
    rho = reduced_state_closed_form(0.7, 2.1)
    assert abs(float(row["concurrence"]) - concurrence(rho)) < 1e-9
    assert abs(float(row["linear_entropy"]) - linear_entropy(rho)) < 1e-9
    assert abs(float(row["bell_max"]) - bell_max(rho)) < 1e-9
    assert abs(float(row["rho_re_11"]) - rho[1, 1].real) < 1e-9
    assert abs(float(row["rho_re_12"]) - rho[1, 2].real) < 1e-9


def test_evolve_landmarks(capsys):
    _, out, _ = run(capsys, "evolve", "--chi", "1", "--theta", "0")
    row = dict(zip(*[s.split(",") for s in out.splitlines()[-2:]]))
    assert float(row["concurrence"]) == 0.0
    assert float(row["linear_entropy"]) < 1e-12
    assert abs(float(row["bell_max"]) - 2.0) < 1e-9
    _, out, _ = run(capsys, "evolve", "--chi", "0.4142135", "--theta", "3.1415927")
    row = dict(zip(*[s.split(",") for s in out.splitlines()[-2:]]))
    assert float(row["concurrence"]) > 0.999999
    _, out, _ = run(capsys, "evolve", "--chi", "1", "--theta", "1.5707963")
    row = dict(zip(*[s.split(",") for s in out.splitlines()[-2:]]))
    assert abs(float(row["concurrence"]) - 0.5) < 1e-6


def test_evolve2_schema_and_photon_columns(capsys):
    code, out, _ = run(capsys, "evolve2", "--chi", "0.18",
                       "--horizon", "3.0", "--coarse-step", "0.5")
    assert code == 0
    _, header, rows = parse(out)
    assert header == ["chi", "u", "concurrence", "linear_entropy", "bell_max",
                      "p0", "p1", "p2"]
    assert len(rows) == 7  # u = 0.0 .. 3.0 in steps of 0.5
    for r in rows:
        pn = [float(x) for x in r[-3:]]
        assert abs(sum(pn) - 1.0) < 1e-9
        assert min(pn) > -1e-12
    assert float(rows[0][2]) == 0.0  # product state at u = 0


def test_fig1_schema(capsys):
    code, out, _ = run(capsys, "fig", "1", "--theta-list", "0.5,2.0",
                       "--chi-steps", "15")
    assert code == 0
    _, header, rows = parse(out)
    assert header == ["theta", "chi", "M", "measure"]
    assert len(rows) == 2 * 30  # two thetas, linear plus log grid
    thetas = sorted({float(r[0]) for r in rows})
    assert thetas == [0.5, 2.0]


def test_fig3a_landmarks(capsys):
    code, out, _ = run(capsys, "fig", "3a", "--chi-steps", "200")
    assert code == 0
    _, header, rows = parse(out)
    assert header == ["chi", "max_value", "argmax_phase"]
    chi = np.array([float(r[0]) for r in rows])
    val = np.array([float(r[1]) for r in rows])
    assert abs(val[np.argmin(np.abs(chi - 0.41421356))] - 1.0) < 1e-3
    assert abs(val[np.argmin(np.abs(chi - 2.41421356))] - 1.0) < 1e-3
    local_min = val[np.argmin(np.abs(chi - 0.8105))]
    assert abs(local_min - 0.405) < 5e-3


def test_fig3b_symmetry_on_log_grid(capsys):
    _, out, _ = run(capsys, "fig", "3b", "--chi-steps", "41")
    _, _, rows = parse(out)
    val = np.array([float(r[1]) for r in rows])
    # geometric grid symmetric about 1 pairs chi with 1/chi
    assert np.max(np.abs(val - val[::-1])) < 1e-9


def test_fig4a_small_run(capsys):
    code, out, _ = run(capsys, "fig", "4a", "--chi-min", "0.1", "--chi-max", "0.3",
                       "--chi-steps", "3", "--horizon", "40", "--coarse-step", "0.01")
    assert code == 0
    _, header, rows = parse(out)
    assert header == ["chi", "max_value", "argmax_phase"]
    assert len(rows) == 3
    assert all(0.0 < float(r[1]) <= 1.0 for r in rows)


def test_frontier_kinds(capsys):
    _, out, _ = run(capsys, "frontier", "mems", "--samples", "40")
    _, header, rows = parse(out)
    assert header == ["kind", "mixedness", "value"]
    assert rows[0][0] == "mems"
    assert float(rows[0][1]) == 0.0 and float(rows[0][2]) == 1.0
    assert float(rows[-1][1]) < 8.0 / 9.0 + 1e-9

    _, out, _ = run(capsys, "frontier", "werner", "--samples", "10")
    _, _, rows = parse(out)
    assert float(rows[-1][1]) == 1.0 and float(rows[-1][2]) == 0.0

    _, out, _ = run(capsys, "frontier", "mbvms", "--restarts", "4",
                    "--entropy-steps", "5")
    meta, _, rows = parse(out)
    assert any("optimizer_tol" in l for l in meta)
    assert any("note: numeric lower-bound stand-in" in l for l in meta)
    assert len(rows) == 5
    assert abs(float(rows[0][2]) - 2.0 * np.sqrt(2.0)) < 1e-6


def test_frontier_trajectory_kind(capsys):
    code, out, _ = run(capsys, "frontier", "trajectory", "--theta-list",
                       "3.1415927,1.5707963", "--chi-steps", "12",
                       "--measure", "concurrence")
    assert code == 0
    _, header, rows = parse(out)
    assert header == ["kind", "theta", "mixedness", "value"]
    assert len(rows) == 2 * 24  # two thetas, linear half plus log half
    assert all(r[0] == "trajectory" for r in rows)
    # blocks come out in list order
    assert float(rows[0][1]) == 3.1415927
    assert float(rows[-1][1]) == 1.5707963
    # the pi block passes through the maximal-entanglement point chi=sqrt(2)-1
    pi_best = max(float(r[3]) for r in rows if float(r[1]) > 3.0)
    assert pi_best > 0.97
    # every point respects the frontier
    for r in rows:
        assert float(r[3]) <= mems_frontier_value(float(r[2])) + 1e-9

    code, _, _ = run(capsys, "frontier", "trajectory")
    assert code == 2  # --theta-list is mandatory for this kind


def test_symmetry_rows(capsys):
    code, out, _ = run(capsys, "symmetry", "--chi-list", "3.0,1.5,0.5773503")
    assert code == 0
    _, header, rows = parse(out)
    assert header == ["chi", "c_m_chi", "c_m_inv_chi", "bell_chi", "bell_inv_chi",
                      "concurrence_symmetric", "bell_symmetric"]
    got = {float(r[0]): (r[5], r[6]) for r in rows}
    assert got[1.5] == ("false", "true")
    assert got[3.0] == ("true", "true")
    assert got[0.5773503] == ("true", "true")
    assert [float(r[0]) for r in rows] == sorted(got)  # sorted by primary key


def test_global_max_single_and_grid(capsys):
    _, out, _ = run(capsys, "global-max", "--chi", "1.0")
    _, header, rows = parse(out)
    assert header == ["measure", "chi", "excitation", "value_numeric",
                      "argmax_phase", "value_closed", "branch_closed"]
    by_measure = {r[0]: r for r in rows}
    assert abs(float(by_measure["concurrence"][3]) - 0.5) < 1e-6
    assert abs(float(by_measure["concurrence"][5]) - 0.5) < 1e-12
    assert by_measure["concurrence"][6] == "interior"
    assert by_measure["bell"][6] == "pi-boundary"

    _, out, _ = run(capsys, "global-max", "--chi", "0.2", "--excitation", "2",
                    "--horizon", "30", "--coarse-step", "0.01")
    _, _, rows = parse(out)
    assert all(r[5] == "" and r[6] == "" for r in rows)  # no closed form here


def test_unknown_figure_is_usage_error(capsys):
    code, _, _ = run(capsys, "fig", "9")
    assert code == 2


def test_invalid_values_exit_2(capsys):
    code, _, err = run(capsys, "evolve", "--chi", "-3", "--theta", "1")
    assert code == 2
    assert "chi" in err
    code, _, _ = run(capsys, "evolve2", "--chi", "0.5", "--horizon", "-1")
    assert code == 2
    code, _, _ = run(capsys, "symmetry", "--chi-list", "1.0,spam")
    assert code == 2


def test_out_flag_writes_identical_bytes(tmp_path, capsys):
    target = tmp_path / "run.csv"
    code, out, _ = run(capsys, "evolve", "--chi", "0.9", "--theta", "1.1")
    assert code == 0
    code2 = main(["evolve", "--chi", "0.9", "--theta", "1.1", "--out", str(target)])
    capsys.readouterr()
    assert code2 == 0
    assert target.read_text(encoding="utf-8") == out


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep setup\nchi=0.5\ntheta=1.0\n", encoding="utf-8")
    _, out, _ = run(capsys, "evolve", "--config", str(cfg))
    _, header, rows = parse(out)
    row = dict(zip(header, rows[0]))
    assert float(row["chi"]) == 0.5 and float(row["theta"]) == 1.0
    # explicit flags win over the file
    _, out, _ = run(capsys, "evolve", "--config", str(cfg), "--theta", "2.0")
    _, header, rows = parse(out)
    assert float(dict(zip(header, rows[0]))["theta"]) == 2.0
    # malformed lines are usage errors
    bad = tmp_path / "bad.cfg"
    bad.write_text("chi 0.5\n", encoding="utf-8")
    code, _, _ = run(capsys, "evolve", "--config", str(bad))
    assert code == 2


def test_repeat_runs_identical(capsys):
    for argv in (["evolve", "--chi", "0.7", "--theta", "2.1"],
                 ["frontier", "mbvms", "--restarts", "4"],
                 ["fig", "2", "--theta-list", "1.0", "--chi-steps", "10"],
                 ["global-max", "--chi", "0.8"]):
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cavitymems.cli", "evolve",
                           "--chi", "1", "--theta", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("# cavitymems")
