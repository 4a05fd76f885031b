import json
import shutil
import subprocess

import pytest

from legdga import corpus
from legdga.cli import main

C = corpus.CORPUS_DIR


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out else None), out.err


def test_analyze_gamma_cl(capsys):
    code, rep, _ = run(capsys, "analyze", C / "gamma_cl.json")
    assert code == 0 and rep["schema"] == "legdga-report/1"
    r = rep["results"]
    assert len(r["curve"]["crossings"]) == 1
    assert r["curve"]["tangent_winding"] == 0
    assert r["actions"]["lefschetz"]["embedded_lift"] is True
    assert len(r["loose_chart_scan"]) == 2
    assert list(rep["inputs"].values())[0] == __import__("hashlib").sha256((C / "gamma_cl.json").read_bytes()).hexdigest()


def test_analyze_circle(capsys):
    code, rep, _ = run(capsys, "analyze", C / "circle.json")
    assert code == 0
    assert rep["results"]["curve"]["crossings"] == [] and rep["results"]["curve"]["tangent_winding"] == 1


def test_analyze_missing(capsys):
    code, rep, err = run(capsys, "analyze", "missing.json")
    assert code == 2 and rep is None and "missing.json" in err


def test_dga_examples(capsys):
    code, rep, _ = run(capsys, "dga", C / "gamma_cl_tilde.json", "--mode", "symmetric", "--field", "f2")
    assert code == 0 and rep["results"]["display"]["differential"]["a"] == "1 + lambda + mu*lambda"
    assert rep["results"]["d_squared_zero"] is True
    code, rep, _ = run(capsys, "dga", C / "unknot1.json", "--mode", "knot", "--field", "f2")
    assert rep["results"]["display"]["differential"] == {"a": "1 + t"}
    code, rep, _ = run(capsys, "dga", C / "gamma_ch_tilde.json", "--mode", "symmetric", "--field", "f2")
    assert rep["results"]["degree_zero_homology"]["display"] == "GF(2)[mu^±1,lambda^±1]/<1 + lambda + mu^2*lambda>"
    assert any("interleave" in w for w in rep["warnings"])


def test_dga_mode_mismatch(capsys):
    code, _, err = run(capsys, "dga", C / "unknot1.json", "--mode", "symmetric")
    assert code == 3 and "cone markers" in err
    code, _, _ = run(capsys, "dga", C / "gamma_cl.json", "--mode", "spun")
    assert code == 3


def test_sign_warning(capsys):
    _, rep, _ = run(capsys, "dga", C / "unknot1.json", "--field", "q", "--signs", "bounding")
    assert rep["results"]["display"]["differential"] == {"a": "1 - t"}
    assert rep["warnings"] == ["signs outside characteristic two use the 'bounding' table"]


def test_invalid_augmentation_exits_5(capsys):
    code, _, err = run(capsys, "invariants", "lch", C / "gamma_cl_tilde.json", "--aug", "mu=1,lambda=4",
                       "--aug2", "mu=1,lambda=4", "--field", "fp:5")
    assert code == 5 and "lambda=4" in err


def test_lch_valid(capsys):
    code, rep, _ = run(capsys, "invariants", "lch", C / "gamma_cl_tilde.json", "--aug", "mu=1,lambda=2",
                       "--field", "fp:5")
    assert code == 0 and rep["results"]["ranks"] == {"1": 1, "2": 1}


def test_acyclic(capsys):
    code, rep, _ = run(capsys, "invariants", "acyclic", C / "gamma_ch_tilde.json",
                       "--specialize", "mu=1,lambda=1", "--field", "f2")
    assert code == 0 and rep["results"]["acyclic"] is True


def test_potential_check(capsys):
    code, rep, _ = run(capsys, "invariants", "potential-check", C / "gamma_cl_tilde.json", "--field", "fp:5",
                       "--potential", C / "potential_cl.json", "--subst", "mu=v,lambda=u^3*v")
    assert code == 0 and rep["results"]["match"] is True
    code, rep, _ = run(capsys, "invariants", "potential-check", C / "gamma_cl_tilde.json", "--field", "fp:5",
                       "--potential", "potential_ch")
    assert code == 0 and rep["results"]["match"] is False


def test_augpoly_and_augvar(capsys):
    _, rep, _ = run(capsys, "invariants", "augpoly", C / "gamma_cl_tilde.json", "--field", "fp:5")
    assert rep["results"]["polynomial"] == "1 + lambda + mu*lambda"
    _, rep, _ = run(capsys, "invariants", "augvar", C / "gamma_cl_tilde.json", "--field", "fp:5")
    assert len(rep["results"]["points"]) == 3


def test_saved_dga_is_valid_input(capsys, tmp_path):
    path = tmp_path / "cl.json"
    run(capsys, "dga", C / "gamma_cl_tilde.json", "--mode", "symmetric", "--field", "fp:5", "--save", path)
    code, rep, _ = run(capsys, "invariants", "lch", path, "--field", "fp:5")
    assert code == 0 and rep["results"]["ranks"] == {"1": 1, "2": 1}


def test_reports_are_byte_identical(capsys, tmp_path):
    outs = []
    out = tmp_path / "report.json"
    for _ in range(2):
        assert main(["-o", str(out), "dga", str(C / "gamma_ch_tilde.json"), "--mode", "symmetric"]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_regress_reflects_acceptance(capsys):
    code, rep, err = run(capsys, "regress")
    flags = {c["number"]: c["passed"] for c in rep["results"]["criteria"]}
    assert len(flags) == 9 and err.count("criterion") == 9
    assert code == (0 if all(flags.values()) else 1)
    assert [n for n, ok in flags.items() if not ok] == [6]


@pytest.mark.skipif(shutil.which("legdga") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["legdga", "analyze", "missing.json"], capture_output=True, text=True)
    assert proc.returncode == 2 and "error" in proc.stderr
