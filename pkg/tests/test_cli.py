import json
import subprocess
import sys

from gskit.cli import main


def run_cli(*argv):
    from io import StringIO
    import contextlib
    out = StringIO()
    with contextlib.redirect_stdout(out):
        code = main(list(argv))
    return code, out.getvalue()


def test_eq_exact_rational_double_zero():
    code, out = run_cli("eq", "--k", "1/16", "--F", "1/16")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["exact"] is True
    assert doc["kind"] == "degenerate"
    pt = doc["equilibria"]["p_mp"]["point"]
    assert pt["u"] == {"num": 1, "den": 2, "value": 0.5}
    assert pt["v"]["num"] == 1 and pt["v"]["den"] == 4


def test_eq_outside_region():
    code, out = run_cli("eq", "--k", "0.07", "--F", "0.02")
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "none"
    assert list(doc["equilibria"]) == ["p0"]


def test_eq_gh_point():
    code, out = run_cli("eq", "--k", "9/256", "--F", "3/256")
    assert code == 0
    doc = json.loads(out)
    pm = doc["equilibria"]["p_mp"]
    assert pm["point"]["u"]["num"] == 1 and pm["point"]["u"]["den"] == 4
    assert pm["class"] == "nonhyperbolic(hopf)"


def test_eq_domain_error_exit_2():
    code, _ = run_cli("eq", "--k", "-0.01", "--F", "0.02")
    assert code == 2


def test_verify_commands_and_negative_controls():
    code, out = run_cli("verify-bt")
    assert code == 0
    assert json.loads(out)["all_passed"] is True
    code, out = run_cli("verify-bt", "--mutate")
    assert code == 1
    assert json.loads(out)["all_passed"] is False
    code, out = run_cli("verify-bautin")
    assert code == 0
    code, out = run_cli("verify-bautin", "--mutate")
    assert code == 1


def test_curves_csv():
    code, out = run_cli("curves", "--which", "sn", "--k-range", "0.01..0.06",
                        "--n", "5")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "curve,k,F"
    assert len(lines) == 11
    assert all(line.startswith(("sn_upper", "sn_lower")) for line in lines[1:])


def test_cycles_json():
    code, out = run_cli("cycles", "--k", "0.05", "--F", "0.02587")
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == len(doc["cycles"])


def test_continue_csv_hopf():
    code, out = run_cli("continue", "--curve", "hopf", "--k0", "0.03",
                        "--direction", "-1")
    assert code == 0
    header = out.splitlines()[0].split(",")
    assert header[:2] == ["k", "F"]
    assert "flags" in header


def test_map_deterministic(tmp_path):
    args = ("map", "--grid", "12x12", "--k", "0..0.07", "--F", "0..0.07")
    code1, out1 = run_cli(*args)
    code2, out2 = run_cli(*args)
    assert code1 == code2 == 0
    assert out1 == out2
    assert out1.splitlines()[0] == "k,F,label"


def test_portrait_outputs(tmp_path):
    code, out = run_cli("portrait", "--k", "0.07", "--F", "0.02",
                        "--out", str(tmp_path))
    assert code == 0
    svgs = list(tmp_path.glob("*.svg"))
    csvs = list(tmp_path.glob("*.csv"))
    metas = list(tmp_path.glob("*.json"))
    assert len(svgs) == 1 and len(csvs) == 1 and len(metas) == 1
    # byte-identical on rerun
    first = svgs[0].read_bytes()
    run_cli("portrait", "--k", "0.07", "--F", "0.02", "--out", str(tmp_path))
    assert svgs[0].read_bytes() == first


def test_infinity_scan():
    code, out = run_cli("infinity-scan", "--k", "0.07", "--F", "0.02")
    assert code == 0
    doc = json.loads(out)
    assert doc["attractor"] == "p0"


def test_config_file_roundtrip(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nrel_tol = 1e-8\noutdir = out\nthreads = 1\n")
    code, _ = run_cli("--config", str(cfg), "eq", "--k", "0.05", "--F", "0.02")
    assert code == 0
    bad = tmp_path / "bad.cfg"
    bad.write_text("nonsense = 1\n")
    code, _ = run_cli("--config", str(bad), "eq", "--k", "0.05", "--F", "0.02")
    assert code == 2


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gskit.cli", "eq",
                           "--k", "1/16", "--F", "1/16"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["kind"] == "degenerate"


def test_repro_fast_subset():
    code, out = run_cli("repro", "--only", "2", "3")
    assert code == 0
    assert "criterion  2" in out and "criterion  3" in out
    assert "FAIL" not in out.replace("EXPECTED-FAIL", "")
