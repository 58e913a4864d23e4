import json

import numpy as np
import pytest

from fisherinfo.cli import main
from fisherinfo.documents import pairs_from_matrix, povm_to_document
from fisherinfo.linalg import PAULI_Z
from fisherinfo.quantum import projective_povm


@pytest.fixture()
def model_file(tmp_path):
    doc = {
        "dim": 2,
        "kind": "unitary",
        "generator": pairs_from_matrix(PAULI_Z),
        "initial_state": [[2 ** -0.5, 0.0], [2 ** -0.5, 0.0]],
    }
    path = tmp_path / "model.json"
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture()
def x_povm_file(tmp_path):
    basis = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
    path = tmp_path / "x_povm.json"
    path.write_text(json.dumps(povm_to_document(projective_povm(basis))))
    return str(path)


@pytest.fixture()
def z_povm_file(tmp_path):
    path = tmp_path / "z_povm.json"
    path.write_text(json.dumps(povm_to_document(projective_povm(np.eye(2)))))
    return str(path)


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_fisher_command(capsys, model_file, x_povm_file):
    code, out, err = run_cli(capsys, [
        "fisher", "--model", model_file, "--povm", x_povm_file, "--theta", "0.3",
    ])
    assert code == 0 and err == ""
    report = json.loads(out)
    assert report["command"] == "fisher"
    assert report["value"] == pytest.approx(4.0, abs=1e-8)
    assert report["inputs"]["theta"] == 0.3
    assert "p_floor" in report["tolerances"]
    assert list(report)[-1] == "runtime_ms"


def test_fisher_command_with_a_blind_measurement(capsys, model_file, z_povm_file):
    code, out, _ = run_cli(capsys, [
        "fisher", "--model", model_file, "--povm", z_povm_file, "--theta", "0.3",
    ])
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(0.0, abs=1e-12)


def test_qfi_command(capsys, model_file):
    code, out, _ = run_cli(capsys, ["qfi", "--model", model_file, "--theta", "0.3"])
    assert code == 0
    report = json.loads(out)
    assert report["value"] == pytest.approx(4.0, abs=1e-8)
    assert report["support_rank"] == 1


def test_bayes_command_reports_the_bound(capsys, model_file, x_povm_file):
    code, out, _ = run_cli(capsys, [
        "bayes", "--model", model_file, "--povm", x_povm_file,
        "--prior", f"uniform:0,{np.pi}", "--grid", "201",
    ])
    assert code == 0
    values = json.loads(out)["values"]
    assert values["bayesian_information"] == pytest.approx(4.0, abs=1e-8)
    assert values["bcrb_satisfied"] is True
    assert values["bcrb_vacuous"] is False


def test_bayes_command_on_an_uninformative_measurement(capsys, model_file, z_povm_file):
    code, out, _ = run_cli(capsys, [
        "bayes", "--model", model_file, "--povm", z_povm_file,
        "--prior", "uniform:0,1", "--grid", "1001",
    ])
    assert code == 0
    values = json.loads(out)["values"]
    assert abs(values["risk"] - 1.0 / 12.0) < 1e-6
    assert values["bcrb_vacuous"] is True


def test_optimize_command(capsys, model_file):
    code, out, _ = run_cli(capsys, [
        "optimize", "--model", model_file, "--theta", "0.3",
        "--restarts", "4", "--seed", "0",
    ])
    assert code == 0
    report = json.loads(out)
    assert report["value"] == pytest.approx(4.0, abs=1e-8)
    assert report["context"]["label"] == "unrestricted"
    assert report["context"]["povm"]["dim"] == 2
    assert len(report["context"]["state"]) == 2


def test_optimize_command_with_frozen_context(capsys, model_file, z_povm_file):
    code, out, _ = run_cli(capsys, [
        "optimize", "--model", model_file, "--theta", "0.3",
        "--restarts", "2", "--fix-state", "--fix-povm", z_povm_file,
    ])
    assert code == 0
    report = json.loads(out)
    assert report["value"] == pytest.approx(0.0, abs=1e-12)
    assert report["context"]["label"] == "fixed state, fixed povm"


def test_dpi_command_classical(capsys):
    code, out, _ = run_cli(capsys, [
        "dpi", "--mode", "classical", "--trials", "20", "--seed", "5",
    ])
    assert code == 0
    lines = out.splitlines()
    trial_reports = [json.loads(line) for line in lines[:20]]
    assert [r["trial"] for r in trial_reports] == list(range(20))
    assert all(not r["violated"] for r in trial_reports)
    summary = json.loads("\n".join(lines[20:]))
    assert summary["command"] == "dpi"
    assert summary["violations"] == 0
    assert summary["trials"] == 20


def test_dpi_command_quantum(capsys):
    code, out, _ = run_cli(capsys, [
        "dpi", "--mode", "quantum", "--trials", "3", "--seed", "11",
    ])
    assert code == 0
    lines = out.splitlines()
    for line in lines[:3]:
        report = json.loads(line)
        assert report["kind"] == "quantum"
        assert not report["violated"]
    assert json.loads("\n".join(lines[3:]))["violations"] == 0


def test_paper_example_command(capsys):
    code, out, _ = run_cli(capsys, ["paper-example", "--theta", "0.4"])
    assert code == 0
    report = json.loads(out)
    values = report["values"]
    assert values["base"] == pytest.approx(4.0, abs=1e-8)
    assert values["multipass"] == pytest.approx(16.0, abs=1e-8)
    assert values["restricted"] == pytest.approx(0.0, abs=1e-8)
    assert values["restricted_plus_rotation"] == pytest.approx(4.0, abs=1e-8)
    assert set(report["statements"]) == set(values)


def test_malformed_document_exits_2(capsys, tmp_path, x_povm_file):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    code, out, err = run_cli(capsys, [
        "fisher", "--model", str(bad), "--povm", x_povm_file, "--theta", "0.3",
    ])
    assert code == 2
    assert out == ""
    assert err.startswith("error:2:")


def test_bad_prior_spec_exits_2(capsys, model_file, x_povm_file):
    code, _, err = run_cli(capsys, [
        "bayes", "--model", model_file, "--povm", x_povm_file, "--prior", "tri:0,1",
    ])
    assert code == 2
    assert err.startswith("error:2:")


def test_dimension_mismatch_exits_3(capsys, model_file, tmp_path):
    path = tmp_path / "big_povm.json"
    path.write_text(json.dumps(povm_to_document(projective_povm(np.eye(3)))))
    code, _, err = run_cli(capsys, [
        "fisher", "--model", model_file, "--povm", str(path), "--theta", "0.3",
    ])
    assert code == 3
    assert err.startswith("error:3:")


def test_singular_computation_exits_4(capsys, model_file, x_povm_file):
    code, _, err = run_cli(capsys, [
        "fisher", "--model", model_file, "--povm", x_povm_file, "--theta", "1e-7",
    ])
    assert code == 4
    assert err.startswith("error:4:")


def strip_runtime(text: str) -> list:
    docs = []
    lines = text.splitlines()
    plain = [line for line in lines if line.startswith("{") and line.endswith("}")]
    for line in plain:
        docs.append(json.loads(line))
    rest = [line for line in lines if line not in plain]
    if rest:
        summary = json.loads("\n".join(rest))
        summary.pop("runtime_ms", None)
        docs.append(summary)
    return docs


def test_reports_are_deterministic_modulo_runtime(capsys, model_file):
    outputs = []
    for _ in range(2):
        _, out, _ = run_cli(capsys, [
            "optimize", "--model", model_file, "--theta", "0.5",
            "--restarts", "4", "--seed", "7",
        ])
        outputs.append(strip_runtime(out))
    assert outputs[0] == outputs[1]

    dpi_outputs = []
    for _ in range(2):
        _, out, _ = run_cli(capsys, [
            "dpi", "--mode", "classical", "--trials", "10", "--seed", "5",
        ])
        dpi_outputs.append(strip_runtime(out))
    assert dpi_outputs[0] == dpi_outputs[1]
