import json

import pytest

from heckelab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_p_pm_json(capsys):
    code, out, _ = run(capsys, "compute", "p_pm", "--type", "GL", "--rank", "2", "--c", "1/2,0", "--y", "1/2,0",
                       "--sign", "+", "--json")
    assert code == 0
    data = json.loads(out)
    terms = {tuple(t["exponent"]): t["coeff"] for t in data["terms"]}
    assert terms == {("1/2", "0"): [{"coeff": "1", "exponents": [0, 0]}],
                     ("0", "1/2"): [{"coeff": "1", "exponents": [1, 0]}]}


def test_spherical_whittaker_text(capsys):
    code, out, _ = run(capsys, "compute", "whittaker", "--flavor", "spherical", "--type", "GL", "--rank", "2",
                       "--n", "1", "--lambda", "0,0")
    assert code == 0
    assert out.strip() == "(1) + (-1*q^2)*y^(1,-1)"


def test_precondition_exit_1(capsys):
    code, _, err = run(capsys, "compute", "p_pm", "--c", "1,0", "--type", "GL", "--rank", "2", "--y", "0,0",
                       "--sign", "+")
    assert code == 1
    assert "not in C0_Lambda" in err


@pytest.mark.parametrize("argv", [
    ["compute", "p_pm", "--type", "GL", "--rank", "2"],
    ["compute", "p_pm", "--type", "X", "--rank", "2", "--c", "0,0", "--y", "0,0", "--sign", "+"],
    ["compute", "p_pm", "--type", "GL", "--rank", "2", "--c", "0,0", "--y", "0,0", "--sign", "?"],
    ["compute", "ebar", "--type", "GL", "--rank", "2", "--y", "a,b"],
])
def test_usage_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["compute", "nosuchobject"])
    assert exc.value.code == 2


def test_unknown_suite_exit_2(capsys):
    assert run(capsys, "verify", "--suite", "nosuch")[0] == 2


def test_verify_gl_duality(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, text, _ = run(capsys, "verify", "--suite", "thm-1.1-GLr", "--rank", "2", "--n", "3", "--out", str(out))
    assert code == 0
    assert "0 failed" in text
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["config"]["systems"] == ["GL2"] and data["config"]["ns"] == [3]


def test_verify_flip_exit_1(capsys):
    code, _, _ = run(capsys, "verify", "--suite", "thm-1.1-GLr", "--systems", "GL2", "--n", "2", "--flip-half")
    assert code == 1


def test_byte_identical(capsys):
    argv = ["compute", "gamma", "--type", "B", "--rank", "2", "--c", "0,0", "--w", "e", "--what", "e",
            "--f", "3,1", "--sign", "-", "--json"]
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    assert a == b and json.loads(a)["terms"]


def test_jobs_env_default(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("HECKELAB_JOBS", "2")
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "verify", "--suite", "casselman-shalika", "--systems", "GL2", "--out", str(p1))[0] == 0
    monkeypatch.setenv("HECKELAB_JOBS", "1")
    assert run(capsys, "verify", "--suite", "casselman-shalika", "--systems", "GL2", "--out", str(p2))[0] == 0
    assert p1.read_bytes() == p2.read_bytes()


def test_list(capsys):
    code, out, _ = run(capsys, "list", "--json")
    data = json.loads(out)
    assert code == 0 and "thm-1.1-GLr" in data["suites"] and "duality-constants" in data["objects"]


@pytest.mark.parametrize("argv", [
    ["compute", "ebar", "--type", "GL", "--rank", "2", "--y", "1/2,0"],
    ["compute", "pJ", "--type", "GL", "--rank", "2", "--lambda", "1,0", "--J", "1", "--sign", "-"],
    ["compute", "whittaker", "--flavor", "parahoric", "--type", "GL", "--rank", "2", "--lambda", "0,0", "--J", "1"],
    ["compute", "phi_theta", "--type", "GL", "--rank", "2", "--n", "2", "--mu", "1,0", "--theta", "1,0"],
    ["compute", "hecke-product", "--type", "GL", "--rank", "2", "--h1", "T:1", "--h2", "x:1,0"],
    ["compute", "duality-constants", "--type", "GL", "--rank", "2", "--n", "2", "--c", "2,1"],
])
def test_other_objects(capsys, argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    json.loads(out)


def test_module_entry_point():
    import subprocess
    import sys
    r = subprocess.run([sys.executable, "-m", "heckelab", "list"], capture_output=True, text=True)
    assert r.returncode == 0 and "casselman-shalika" in r.stdout
