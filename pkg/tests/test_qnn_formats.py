import json
from dataclasses import replace

import numpy as np
import pytest

from qnn_toolkit.errors import ParseError
from qnn_toolkit.qnn import (
    default_dynamics,
    format_program,
    parse_program,
    program_from_dict,
    program_to_dict,
    program_truth_table,
    quantize_program,
    simulate,
    three_nand_network,
)

IDENTITY_TEXT = """\
# single-input pass-through
qnn m=0 d=1
inputs x
leaf 0 x
layer 1 blocks=1
dim 2
1:0 0:0
0:0 1:0
dgate width=1 delta=0.5 cout=1 mode=ideal
sink
"""


def test_parse_minimal_program():
    program = parse_program(IDENTITY_TEXT)
    assert (program.m, program.d, program.fanin, program.num_qubits) == (0, 1, 1, 1)
    assert program.canonical
    assert program.encoding.one_value == 1.0
    assert [simulate(program, (x,)).output for x in (0, 1)] == [0, 1]


def test_compiled_program_text_is_stable(three_nand_program):
    text = format_program(three_nand_program)
    assert text.startswith("qnn m=2 d=2 s=4 qubits=5")
    assert "layout=compiled" in text
    parsed = parse_program(text)
    assert format_program(parsed) == text
    assert np.array_equal(program_truth_table(parsed), program_truth_table(three_nand_program))


def test_custom_layout_text():
    network = three_nand_network()
    text = format_program(network)
    assert "layout=custom" in text
    assert "layer 1 dense" in text
    assert "rails=1" in text
    assert "sink q1" in text
    parsed = parse_program(text)
    assert not parsed.canonical
    assert parsed.layers[0].dgate.rails == (1,)
    assert np.array_equal(program_truth_table(parsed), program_truth_table(network))


def test_precision_and_dynamics_survive(nand_program):
    layer = nand_program.layers[0]
    ode = replace(layer, dgate=replace(layer.dgate, mode="ode", dynamics=default_dynamics()))
    program = quantize_program(replace(nand_program, layers=(ode,)), 9)
    text = format_program(program)
    assert "precision=9" in text
    parsed = parse_program(text)
    assert parsed.layers[0].unitary.precision == 9
    assert parsed.layers[0].dgate.mode == "ode"
    assert parsed.layers[0].dgate.dynamics == program.layers[0].dgate.dynamics


def test_json_matches_text(three_nand_program):
    data = json.loads(json.dumps(program_to_dict(three_nand_program)))
    restored = program_from_dict(data)
    assert format_program(restored) == format_program(three_nand_program)


def test_json_custom_layout():
    network = three_nand_network()
    restored = program_from_dict(json.loads(json.dumps(program_to_dict(network))))
    assert format_program(restored) == format_program(network)


@pytest.mark.parametrize("text,line", [
    ("qnn d=1\n", 1),
    ("circuit m=0 d=1\n", 1),
    ("qnn m=0 d=1 layout=fancy\n", 1),
    ("qnn m=0 d=1\ninputs x\nleaf 0 y\n", 3),
    ("qnn m=0 d=1\ninputs x\nleaf zero x\n", 3),
    ("qnn m=0 d=1\ninputs x\nleaf 0 x\nlayer 1 blocks=1\ndim 2\n1:0 0:0\n0:0 1:0\nsink\n", 4),
    ("qnn m=0 d=1\ninputs x\nleaf 0 x\nlayer 1 blocks=1\ndim 2\n1:0 0:0\n", 5),
    ("qnn m=0 d=1\ninputs x\nleaf 0 x\nlayer 1 blocks=1\ndim 2\n1:0 0:0\n0:0 1:0\n"
     "dgate width=1 cout=1\nsink\n", 8),
])
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_program(text)
    assert info.value.line == line


def test_parse_error_names_the_file():
    with pytest.raises(ParseError) as info:
        parse_program("", "empty.qnn")
    assert str(info.value).startswith("empty.qnn:")


def test_parse_rejects_invalid_program():
    # two layers declared, one present
    text = IDENTITY_TEXT.replace("d=1", "d=2")
    with pytest.raises(ParseError):
        parse_program(text)
