import json
import os
import subprocess
import sys

import pytest

from gwknots import cli
from gwknots.chord_diagrams import a_i_presentation
from gwknots.cache import Cache, code_version
from gwknots.exact_linalg import OPERATIONS


def run(argv, capsys):
    # drop in-process memoization so only the disk cache can skip work
    a_i_presentation.cache_clear()
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_range():
    assert cli.parse_range("3", 2) == [3]
    assert cli.parse_range("2..5", 2) == [2, 3, 4, 5]
    for bad in ("5..2", "x", "1", "2..", "2..3..4"):
        with pytest.raises(cli.InputError):
            cli.parse_range(bad, 2)


def test_e2_single(cache_dir, capsys):
    code, out, _ = run(["e2", "--m", "3"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["m"] == 3 and rep["match"] is True and rep["gating"] is True
    assert rep["e2"] == {"free": 1, "torsion": []}


def test_e2_out_dir(cache_dir, tmp_path, capsys):
    out = tmp_path / "reports"
    code, _, _ = run(["e2", "--m", "2..5", "--out", str(out)], capsys)
    assert code == 0
    assert sorted(p.name for p in out.iterdir()) == [f"e2_m{m}.json" for m in range(2, 6)]


def test_e2_classical_never_gates(cache_dir, capsys):
    code, out, _ = run(["e2", "--m", "5", "--convention", "classical"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["gating"] is False and rep["match"] is False
    assert "diff" in rep


def test_e2_mismatch_exit_code(cache_dir, capsys, monkeypatch):
    from gwknots import tower_ss

    real = tower_ss.verify_e2comp

    def skewed(m, convention):
        rep = real(m, convention)
        rep["match"] = False
        return rep

    monkeypatch.setattr(tower_ss, "verify_e2comp", skewed)
    code, out, _ = run(["--no-cache", "e2", "--m", "3"], capsys)
    assert code == 2
    assert "diff" in json.loads(out)


def test_csv_format(cache_dir, capsys):
    code, out, _ = run(["e2", "--m", "2..3", "--format", "csv"], capsys)
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 3
    assert "e2.free" in lines[0].split(",")


def test_chord(cache_dir, capsys):
    for m in ("1", "2"):
        code, out, _ = run(["chord", "--m", m], capsys)
        assert code == 0 and json.loads(out)["free_rank"] == 1
    code, out, _ = run(["chord", "--m", "4", "--sparse"], capsys)
    assert json.loads(out)["free_rank"] == 2


def test_e1_d1_hall(cache_dir, capsys):
    code, out, _ = run(["e1", "--m", "4"], capsys)
    assert code == 0 and json.loads(out)["free"] == 2
    code, out, _ = run(["e1", "--m", "2", "--degree", "1"], capsys)
    assert json.loads(out)["eta_special"] is True
    code, out, _ = run(["d1", "--m", "4"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["rows"] == 2 and rep["rank"] == 1
    code, out, _ = run(["hall", "--alphabet", "1,2", "--length", "3"], capsys)
    assert json.loads(out)["count"] == 2
    code, out, _ = run(["hall", "--multilinear", "5"], capsys)
    assert json.loads(out)["multilinear_rank"] == 24


@pytest.mark.parametrize(
    "argv",
    [
        ["e2", "--m", "9"],
        ["e2", "--m", "1"],
        ["e2"],
        ["frobnicate"],
        ["d1", "--m", "2"],
        ["hall"],
        ["hall", "--alphabet", "1,,2", "--length", "2"],
        ["config-check", "--samples", "0"],
        ["config-check", "--tol", "-1"],
        ["config-check", "--knot", "does/not/exist.json", "--samples", "1"],
    ],
)
def test_input_errors(cache_dir, capsys, argv):
    code, _, _ = run(argv, capsys)
    assert code == 4


def test_malformed_knot_exit(cache_dir, tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"segments": [{"t0": -1, "t1": 1, "coeffs": [[0]]}]}))
    code, _, err = run(["config-check", "--knot", str(bad), "--samples", "1"], capsys)
    assert code == 4 and "knot" in err


def test_config_check_tolerance(cache_dir, capsys):
    code, out, _ = run(["config-check", "--seed", "1", "--samples", "20"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "check,seed,max_error,tolerance,passed"
    code, out, _ = run(["config-check", "--seed", "1", "--samples", "20", "--tol", "1e-15"], capsys)
    assert code == 2
    assert any(line.endswith(",0") for line in out.splitlines()[1:])


def test_config_check_trefoil(cache_dir, capsys):
    knot = os.path.join(os.path.dirname(__file__), "..", "knots", "trefoil.json")
    code, out, _ = run(["config-check", "--knot", knot, "--samples", "10"], capsys)
    assert code == 0
    assert "ev_equivariance" in out and "proj_action" in out


def test_resource_abort():
    code = subprocess.run(
        [sys.executable, "-m", "gwknots", "--no-cache", "--max-seconds", "0.05", "e2", "--m", "6"],
        capture_output=True,
    ).returncode
    assert code == 3


def test_warm_cache_is_idempotent(cache_dir, capsys):
    argv = ["e2", "--m", "2..4"]
    _, first, _ = run(argv, capsys)
    before = sum(OPERATIONS.values())
    _, second, _ = run(argv, capsys)
    assert sum(OPERATIONS.values()) == before
    assert first == second
    argv = ["chord", "--m", "3"]
    before = sum(OPERATIONS.values())
    _, first, _ = run(argv, capsys)
    assert sum(OPERATIONS.values()) > before
    before = sum(OPERATIONS.values())
    _, second, _ = run(argv, capsys)
    assert sum(OPERATIONS.values()) == before and first == second


def test_corrupt_cache_recomputes(cache_dir, capsys, caplog):
    _, first, _ = run(["chord", "--m", "3"], capsys)
    entries = list(cache_dir.glob("*/*.json"))
    assert len(entries) == 1
    entries[0].write_text("{broken")
    before = sum(OPERATIONS.values())
    _, second, _ = run(["chord", "--m", "3"], capsys)
    assert first == second
    assert sum(OPERATIONS.values()) > before
    assert "corrupt" in caplog.text
    assert json.loads(entries[0].read_text())["version"] == code_version()


def test_cache_keys_separate_conventions(cache_dir):
    c = Cache(cache_dir)
    a = c.key("e2", {"m": 3, "convention": "classical"})
    b = c.key("e2", {"m": 3, "convention": "graded-symmetric"})
    assert a != b


def test_stale_entries_not_served_and_collected(cache_dir, capsys):
    run(["chord", "--m", "2"], capsys)
    (entry,) = cache_dir.glob("*/*.json")
    obj = json.loads(entry.read_text())
    obj["version"] = "0" * 16
    obj["result"]["free_rank"] = 99
    entry.write_text(json.dumps(obj))
    _, out, _ = run(["chord", "--m", "2"], capsys)
    assert json.loads(out)["free_rank"] == 1
    # the recompute rewrote the entry; plant a stale one next to it for gc
    stale = entry.with_name("f" * 64 + ".json")
    stale.write_text(json.dumps(obj))
    code, out, _ = run(["cache", "gc"], capsys)
    assert code == 0 and json.loads(out) == {"kept": 1, "removed": 1}
    assert not stale.exists() and entry.exists()
