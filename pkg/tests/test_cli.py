import json

import pytest

from qnn_toolkit import __version__
from qnn_toolkit.circuits import GateKind, format_circuit, max_weight, parse_circuit
from qnn_toolkit.cli import EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, main
from qnn_toolkit.qnn import nand_circuit, parse_program, three_nand_circuit


@pytest.fixture
def nand_file(tmp_path):
    path = tmp_path / "nand.circ"
    path.write_text(format_circuit(nand_circuit()), encoding="utf-8")
    return path


@pytest.fixture
def nand_qnn(tmp_path, nand_file):
    path = tmp_path / "nand.qnn"
    assert main(["compile", "--from", "nand", "--to", "qnn", str(nand_file), "-o", str(path)]) == 0
    return path


def test_compile_writes_header(nand_qnn):
    text = nand_qnn.read_text(encoding="utf-8")
    first = text.splitlines()[0]
    assert first.startswith(f"# qnn-toolkit {__version__} compile --from nand --to qnn")
    program = parse_program(text)
    assert (program.m, program.d, program.num_qubits) == (2, 1, 3)


def test_compile_json_and_report(tmp_path, nand_file):
    out = tmp_path / "nand.json"
    report = tmp_path / "report.txt"
    code = main(["compile", "--from", "nand", "--to", "qnn", str(nand_file),
                 "-o", str(out), "--json", "--report", str(report)])
    assert code == EXIT_OK
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["generator"] == f"qnn-toolkit {__version__}"
    assert data["program"]["fanin"] == 4
    passes = json.loads(report.read_text(encoding="utf-8"))["passes"]
    assert [p["pass"] for p in passes] == ["nand_to_ec", "ec_to_qnn"]
    assert passes[1]["qubits"] == 3
    assert passes[1]["levels"][0]["precision"] == 5


def test_compile_text_report(tmp_path, nand_file):
    report = tmp_path / "report.txt"
    out = tmp_path / "nand.ec"
    assert main(["compile", "--from", "nand", "--to", "ec", str(nand_file),
                 "-o", str(out), "--report", str(report)]) == EXIT_OK
    lines = report.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("# qnn-toolkit")
    assert "pass\tnand_to_ec" in lines
    assert parse_circuit(out.read_text(encoding="utf-8")).node("nand").fanin == 3


def test_compile_qnn_back_to_tc(tmp_path, nand_qnn):
    out = tmp_path / "back.tc"
    assert main(["compile", "--from", "qnn", "--to", "tc", str(nand_qnn), "-o", str(out)]) == 0
    assert main(["verify", str(out), str(nand_qnn)]) == EXIT_OK


def test_simulate(capsys, nand_qnn):
    assert main(["simulate", str(nand_qnn), "--input", "11", "--trace"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "output\t0" in out
    assert "layer\t1\tchecked" in out
    assert main(["simulate", str(nand_qnn), "--input", "10", "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["output"] == 1
    assert data["final_state"]["num_qubits"] == 1


def test_simulate_ode_and_precision(capsys, nand_qnn):
    assert main(["simulate", str(nand_qnn), "--input", "01", "--d-mode", "ode",
                 "--precision", "6"]) == EXIT_OK
    assert "output\t1" in capsys.readouterr().out


def test_verify_mismatch(tmp_path, capsys, nand_qnn):
    other = tmp_path / "three.circ"
    other.write_text(format_circuit(three_nand_circuit()), encoding="utf-8")
    assert main(["verify", str(other), str(nand_qnn)]) == EXIT_INPUT
    assert "arity" in capsys.readouterr().err

    or_gate = tmp_path / "or.circ"
    or_gate.write_text("x1 INPUT\nx2 INPUT\ng TH 1 x1 x2\nOUTPUT g\n", encoding="utf-8")
    report = tmp_path / "verify.txt"
    assert main(["verify", str(or_gate), str(nand_qnn), "--report", str(report)]) == EXIT_MISMATCH
    assert "mismatches\t2" in report.read_text(encoding="utf-8")


def test_verify_sampled_json(capsys, nand_file, nand_qnn):
    assert main(["verify", str(nand_file), str(nand_qnn), "--mode", "sampled",
                 "--samples", "8", "--seed", "3", "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["mode"] == "sampled" and data["seed"] == 3
    assert data["mismatches"] == []


def test_dgate_plan(tmp_path):
    out = tmp_path / "plan.csv"
    assert main(["dgate-plan", "--delta", "0.5", "--delta0", "0.25", "--delta1", "0.75",
                 "--eps", "0.01", "--time", "1", "--points", "5", "-o", str(out)]) == EXIT_OK
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("# qnn-toolkit")
    rate = float(lines[1].split()[3].split("=")[1])
    assert rate == pytest.approx(8.57, abs=0.01)
    assert lines[2] == "t,|a|,implicit_lhs,exp(-Rt)"
    assert len(lines) == 3 + 5


def test_encode(capsys):
    assert main(["encode", "1011"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "# dense" in out and "# encoder" in out
    assert main(["encode", "10", "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["dense"]["num_qubits"] == 1
    assert data["encoder"]["num_qubits"] == 2


@pytest.mark.parametrize("argv", [
    ["encode", "10x"],
    ["simulate", "missing.qnn", "--input", "1"],
    ["compile", "--from", "tc", "--to", "qnn", "missing.circ"],
    ["compile", "--from", "ec", "--to", "nand", "x.circ"],
    ["--config", "absent.json", "encode", "1"],
    [],
])
def test_input_errors(argv):
    assert main(argv) == EXIT_INPUT


def test_parse_error_names_file(tmp_path, capsys):
    bad = tmp_path / "bad.circ"
    bad.write_text("x1 INPUT\ng ET one:x1\nOUTPUT g\n", encoding="utf-8")
    assert main(["compile", "--from", "ec", "--to", "tc", str(bad)]) == EXIT_INPUT
    assert f"{bad}:2:" in capsys.readouterr().err


def test_version(capsys):
    assert main(["--version"]) == EXIT_OK
    assert __version__ in capsys.readouterr().out


def test_disabled_route(tmp_path, nand_qnn):
    routes = tmp_path / "routes.json"
    routes.write_text(json.dumps({"circuit_routes": {}, "qnn_routes": {"ec_to_qnn": {"enabled": True}}}),
                      encoding="utf-8")
    assert main(["--routes", str(routes), "compile", "--from", "qnn", "--to", "ec",
                 str(nand_qnn)]) == EXIT_INPUT


def test_weighted_and_unit_threshold_targets(tmp_path, nand_file):
    weighted = tmp_path / "nand.wtc"
    unit = tmp_path / "nand.tc"
    report = tmp_path / "report.txt"
    assert main(["compile", "--from", "nand", "--to", "wtc", str(nand_file), "-o", str(weighted)]) == 0
    assert main(["compile", "--from", "nand", "--to", "tc", str(nand_file), "-o", str(unit),
                 "--report", str(report)]) == 0
    wtc = parse_circuit(weighted.read_text(encoding="utf-8"))
    tc = parse_circuit(unit.read_text(encoding="utf-8"))
    assert any(g.kind is GateKind.WTH for g in wtc.gates)
    assert all(g.kind is GateKind.TH for g in tc.gates)
    assert max_weight(tc) == 1
    assert "pass\twtc_to_tc" in report.read_text(encoding="utf-8").splitlines()
    assert main(["verify", str(unit), str(nand_file)]) == EXIT_OK
