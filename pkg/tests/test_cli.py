import json
import subprocess
import sys

import pytest

from vvmf.cli import main

CLASS1 = {
    "d": 2,
    "w": "0",
    "alpha": [1, 1],
    "beta": [1, 1, 0],
    "lambda": ["1/6", "-1"],
    "chi": [["-4/7", "20736/637"], ["10368", "-1704/7"]],
}


@pytest.fixture
def problem(tmp_path):
    def write(data):
        path = tmp_path / "problem.json"
        path.write_text(json.dumps(data))
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_series_json(capsys):
    code, out, _ = run(capsys, "series", "J", "--order", "4")
    assert code == 0
    data = json.loads(out)
    assert data["offset"] == "-1"
    assert data["coeffs"][:4] == ["1", "744", "196884", "21493760"]


def test_series_text(capsys):
    code, out, _ = run(capsys, "series", "E2", "--order", "2", "--format", "text")
    assert code == 0
    assert out.startswith("E2 = (1) q^0 + (-24) q^1 + (-72) q^2")


def test_order_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("VVMF_DEFAULT_ORDER", "3")
    code, out, _ = run(capsys, "series", "Delta")
    assert code == 0
    assert json.loads(out)["coeffs"] == ["1", "-24", "252", "-1472"]


def test_unknown_series_is_input_error(capsys):
    code, _, err = run(capsys, "series", "E12")
    assert code == 2
    assert "unknown series" in err


def test_fundamental(capsys, problem):
    code, out, _ = run(capsys, "fundamental", "--input", problem(CLASS1), "--order", "3")
    assert code == 0
    data = json.loads(out)
    assert data["alpha"] == [1, 1]


def test_fundamental_verify_and_shift(capsys, problem):
    code, out, _ = run(capsys, "fundamental", "--input", problem(CLASS1), "--order", "8", "--shift", "2", "--verify")
    assert code == 0
    checks = json.loads(out)["checks"]
    assert checks and all(c["pass"] for c in checks)


def test_verify_family(capsys, problem):
    path = problem({"family": {"class": 2, "t": "1/7"}})
    code, out, _ = run(capsys, "verify", "--input", path, "--format", "text")
    assert code == 0
    assert "PASS  hypergeometric oracle" in out
    assert "FAIL" not in out


def test_verify_failure_exit_code(capsys, problem):
    bad = dict(CLASS1, chi=[["-4/7", "1"], ["10368", "-1704/7"]])
    code, out, _ = run(capsys, "verify", "--input", problem(bad), "--order", "8")
    assert code == 3
    assert any(not c["pass"] for c in json.loads(out)["checks"])


def test_basis_uses_one_based_index(capsys, problem):
    code, out, _ = run(capsys, "basis", "--input", problem(CLASS1), "-j", "1", "-n", "0", "--order", "4")
    assert code == 0
    assert json.loads(out)["components"][0]["offset"] == "1/6"
    code, _, err = run(capsys, "basis", "--input", problem(CLASS1), "-j", "3", "-n", "0")
    assert code == 2


def test_dual(capsys, problem):
    code, out, _ = run(capsys, "dual", "--input", problem(CLASS1), "--order", "4")
    assert code == 0
    data = json.loads(out)
    assert data["Lambda"] == ["-7/6", "0"]
    assert data["beta"] == [0, 1, 1]


def test_dims_and_hilbert(capsys, problem):
    path = problem(CLASS1)
    code, out, _ = run(capsys, "dims", "--input", path, "--lambda", "1/6,0", "--weight", "2")
    assert code == 0
    data = json.loads(out)
    assert data["index"] == "-1"
    code, out, _ = run(capsys, "hilbert", "--input", path, "--lambda", "1/6,0")
    assert code == 0
    assert json.loads(out)["generator_weights"] == ["0", "2"]


def test_family_commands(capsys):
    code, out, _ = run(capsys, "family1d", "--u", "0", "-j", "3", "--order", "3")
    assert code == 0
    assert json.loads(out)["series"]["coeffs"] == ["1", "-504", "-16632", "-122976"]
    code, out, _ = run(capsys, "family2d", "--class", "1", "--t", "1/6", "--order", "2")
    assert code == 0
    assert json.loads(out)["chi"][1] == ["10368", "-1704/7"]


def test_input_errors(capsys, problem, tmp_path):
    code, _, err = run(capsys, "verify", "--input", problem(dict(CLASS1, chi=[["1", "2"]])))
    assert code == 2 and "chi: expected 2 entries" in err
    code, _, err = run(capsys, "verify", "--input", problem(dict(CLASS1, alpha=[2, 1])))
    assert code == 2
    bad = tmp_path / "broken.json"
    bad.write_text("{")
    code, _, err = run(capsys, "verify", "--input", str(bad))
    assert code == 2 and "invalid JSON" in err
    code, _, _ = run(capsys, "verify")
    assert code == 2
    code, _, err = run(capsys, "family2d", "--class", "2", "--t", "1/4")
    assert code == 2 and "excluded" in err


def test_math_errors(capsys, problem):
    resonant = {"d": 2, "w": "0", "alpha": [2, 0], "beta": [2, 0, 0], "lambda": ["1", "-1"], "chi": [["0", "0"], ["1", "0"]]}
    code, _, err = run(capsys, "fundamental", "--input", problem(resonant), "--order", "4")
    assert code == 3 and "resonance" in err
    code, _, err = run(capsys, "family2d", "--class", "1", "--t", "0", "--verify")
    assert code == 3


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["family2d", "--class", "9", "--t", "1/7"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["series", "J", "--order", "x"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "vvmf", "series", "E4", "--order", "2", "--format", "text"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "E4 = (1) q^0 + (240) q^1 + (2160) q^2 + O(q^3)"
