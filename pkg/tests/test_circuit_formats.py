import json

import pytest

from qnn_toolkit.circuits import (
    GateKind,
    circuit_from_dict,
    circuit_to_dict,
    equivalent,
    format_circuit,
    parse_circuit,
)
from qnn_toolkit.circuits.random_circuits import random_ec, random_wtc
from qnn_toolkit.errors import ParseError

NAND_TEXT = """\
# two-input NAND as an equality gate
# weight_bound=2
x1 INPUT
x2 INPUT
one CONST1
g ET 1:x1 1:x2 -2:one
OUTPUT g
"""


def test_parse_equality_circuit():
    circuit = parse_circuit(NAND_TEXT)
    assert circuit.weight_bound == 2
    gate = circuit.node("g")
    assert gate.kind is GateKind.ET and gate.weights == (1, 1, -2)


def test_format_reads_back_identically():
    circuit = parse_circuit(NAND_TEXT)
    text = format_circuit(circuit)
    assert parse_circuit(text) == circuit
    assert format_circuit(parse_circuit(text)) == text


def test_all_gate_kinds_and_literals():
    text = "a INPUT\nb INPUT\nz CONST0\nt TH 1 ~a b\nw WTH -1 2:t -3:~b 1:z\nn NAND ~a b\nOUTPUT w n\n"
    circuit = parse_circuit(text)
    assert circuit.node("t").edges[0].negated
    assert circuit.node("w").threshold == -1
    assert format_circuit(circuit) == text


@pytest.mark.parametrize("generator", [random_ec, random_wtc])
def test_random_circuits_survive_text_and_json(generator):
    circuit = generator(21)
    assert equivalent(parse_circuit(format_circuit(circuit)), circuit)
    data = json.loads(json.dumps(circuit_to_dict(circuit)))
    assert circuit_from_dict(data) == circuit


@pytest.mark.parametrize("text,line", [
    ("x INPUT\nOUTPUT x\nOUTPUT x\n", 3),
    ("x INPUT\ng FOO x\nOUTPUT g\n", 2),
    ("x INPUT\ng ET 1:x\nOUTPUT g\ny INPUT\n", 4),
    ("x INPUT\ng ET x\nOUTPUT g\n", 2),
    ("x INPUT\ng TH\nOUTPUT g\n", 2),
    ("x INPUT\ng NAND x\nOUTPUT g\n", 2),
    ("x INPUT extra\nOUTPUT x\n", 1),
    ("x INPUT\ng ET 1:x@\nOUTPUT g\n", 2),
])
def test_parse_errors_report_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_circuit(text, "bad.circ")
    assert info.value.line == line
    assert str(info.value).startswith(f"bad.circ:{line}:")


def test_parse_requires_output_and_valid_references():
    with pytest.raises(ParseError):
        parse_circuit("x INPUT\n")
    with pytest.raises(ParseError):
        parse_circuit("x INPUT\ng ET 1:y\nOUTPUT g\n")
