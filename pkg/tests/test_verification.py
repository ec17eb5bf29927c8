import asyncio
import json

import pytest

from qnn_toolkit import run_verify_sync
from qnn_toolkit.circuits import CircuitBuilder, Edge, circuit_to_dict, format_circuit
from qnn_toolkit.errors import ParseError
from qnn_toolkit.qnn import format_program, program_to_dict, three_nand_network
from qnn_toolkit.verification import (
    CircuitArtifact,
    QnnArtifact,
    VerificationRunner,
    load_artifact,
)


def _or_circuit():
    builder = CircuitBuilder()
    a, b = builder.add_input("x1"), builder.add_input("x2")
    return builder.build([builder.th([Edge(a), Edge(b)], 1, "or")])


def _verify(left, right, **kwargs):
    runner_args = {k: kwargs.pop(k) for k in ("chunk_size", "max_concurrent_chunks") if k in kwargs}

    async def run():
        async with VerificationRunner(**runner_args) as runner:
            return await runner.verify(left, right, **kwargs)

    return asyncio.run(run())


def test_compiled_program_matches_circuit(nand_ec, nand_program):
    report = _verify(CircuitArtifact(nand_ec, "nand.circ"), QnnArtifact(nand_program, "nand.qnn"))
    assert report.ok
    assert report.assignments_checked == 4
    assert report.bounds["left"]["size"] == 1
    assert report.bounds["right"]["qubits"] == 3


def test_three_nand_modes(three_nand_ec, three_nand_program):
    left = CircuitArtifact(three_nand_ec)
    for d_mode in ("ideal", "ode"):
        assert _verify(left, QnnArtifact(three_nand_network(), d_mode=d_mode)).ok
    assert _verify(left, QnnArtifact(three_nand_program, precision=8)).ok


def test_mismatches_are_listed(nand_ec):
    report = _verify(CircuitArtifact(nand_ec, "nand"), CircuitArtifact(_or_circuit(), "or"))
    # NAND and OR differ on 00 and 11
    assert [m.assignment for m in report.mismatches] == ["00", "11"]
    assert report.mismatches[0].left == "1" and report.mismatches[0].right == "0"
    text = report.format_text()
    assert "mismatches\t2" in text
    assert "mismatch\t00\t1\t0" in text


def test_chunking_does_not_change_the_report(three_nand_ec):
    left = CircuitArtifact(three_nand_ec)
    builder = CircuitBuilder()
    xs = [builder.add_input(f"x{i}") for i in range(1, 5)]
    right = CircuitArtifact(builder.build([builder.th([Edge(x) for x in xs], 2)]))
    whole = _verify(left, right)
    chunked = _verify(left, right, chunk_size=3, max_concurrent_chunks=2)
    assert whole.to_dict() == chunked.to_dict()
    assert not whole.ok


def test_sampled_mode_is_seeded(three_nand_ec):
    left = CircuitArtifact(three_nand_ec)
    right = QnnArtifact(three_nand_network())
    first = _verify(left, right, mode="sampled", samples=20, seed=7)
    again = _verify(left, right, mode="sampled", samples=20, seed=7)
    assert first.ok and first.assignments_checked == 20
    assert first.seed == 7
    assert first.to_dict() == again.to_dict()
    assert "sampled 20 seed=7" in first.format_text()


def test_verify_arguments(nand_ec, three_nand_ec):
    with pytest.raises(ValueError):
        _verify(CircuitArtifact(nand_ec), CircuitArtifact(three_nand_ec))
    with pytest.raises(ValueError):
        _verify(CircuitArtifact(nand_ec), CircuitArtifact(nand_ec), mode="random")
    with pytest.raises(ValueError):
        _verify(CircuitArtifact(nand_ec), CircuitArtifact(nand_ec), mode="sampled", samples=0)


def test_exhaustive_limit(nand_ec):
    async def run():
        async with VerificationRunner(max_exhaustive_inputs=1) as runner:
            return await runner.verify(CircuitArtifact(nand_ec), CircuitArtifact(nand_ec))

    with pytest.raises(ValueError):
        asyncio.run(run())


def test_runner_needs_context(nand_ec):
    runner = VerificationRunner()
    with pytest.raises(RuntimeError):
        asyncio.run(runner.verify(CircuitArtifact(nand_ec), CircuitArtifact(nand_ec)))


def test_load_artifacts_from_files(tmp_path, nand_ec, nand_program):
    circ = tmp_path / "nand.circ"
    circ.write_text(format_circuit(nand_ec), encoding="utf-8")
    qnn = tmp_path / "nand.qnn"
    qnn.write_text(format_program(nand_program), encoding="utf-8")
    wrapped = tmp_path / "nand_qnn.json"
    wrapped.write_text(json.dumps({"generator": "test", "program": program_to_dict(nand_program)}),
                       encoding="utf-8")
    plain = tmp_path / "nand_circ.json"
    plain.write_text(json.dumps(circuit_to_dict(nand_ec)), encoding="utf-8")

    assert isinstance(load_artifact(str(circ)), CircuitArtifact)
    assert isinstance(load_artifact(str(qnn)), QnnArtifact)
    assert isinstance(load_artifact(str(wrapped)), QnnArtifact)
    assert load_artifact(str(plain)).name == "nand_circ.json"
    report = run_verify_sync(str(circ), str(wrapped))
    assert report.ok
    assert report.left == "nand.circ"
    assert run_verify_sync(str(plain), str(qnn), d_mode="ode").ok


def test_load_artifact_bad_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{\n  oops", encoding="utf-8")
    with pytest.raises(ParseError) as info:
        load_artifact(str(path))
    assert info.value.line == 2
