import numpy as np
import pytest

from qnn_toolkit.errors import ParseError
from qnn_toolkit.quantum import StateVector, build_nand_unitary
from qnn_toolkit.quantum.formats import (
    format_matrix,
    format_state,
    parse_matrix,
    parse_state,
    state_from_dict,
    state_to_dict,
)


def test_state_dump_reads_back_exactly():
    state = StateVector.from_live(2, [0.1, 0.0, -0.2 + 0.3j, 1 / 3])
    text = format_state(state)
    assert text.splitlines()[0] == "# qubits=2"
    again = parse_state(text)
    np.testing.assert_array_equal(again.amps, state.amps)
    assert again.sink_prob == state.sink_prob


def test_state_dump_skips_zero_amplitudes():
    text = format_state(StateVector.from_live(2, [0.5, 0.0, 0.0, 0.0]))
    assert len(text.splitlines()) == 3


def test_parse_state_without_qubit_comment():
    state = parse_state("3\t0.5\t0\nsink\t0.75\n")
    assert state.num_qubits == 2
    assert state.amps[3] == 0.5


@pytest.mark.parametrize("text", [
    "0\t1\t0\n",
    "0\t1\nsink\t0\n",
    "0\tx\t0\nsink\t0\n",
    "0\t1\t0\n0\t1\t0\nsink\t0\n",
    "sink\t0\n0\t1\t0\n",
])
def test_parse_state_errors(text):
    with pytest.raises(ParseError):
        parse_state(text)


def test_parse_error_carries_line_number():
    with pytest.raises(ParseError) as info:
        parse_state("# qubits=1\n0\tbad\t0\nsink\t0\n")
    assert info.value.line == 2


def test_matrix_round_trip():
    nand = build_nand_unitary()
    again = parse_matrix(format_matrix(nand.entries))
    np.testing.assert_array_equal(again.entries, nand.entries)


def test_matrix_errors():
    with pytest.raises(ParseError):
        parse_matrix("dim 2\n1:0 0:0\n")
    with pytest.raises(ParseError):
        parse_matrix("dim 2\n1:0 0:0\n0:0 1\n")
    with pytest.raises(ParseError):
        parse_matrix("dim 1\n1:0\nextra\n")


def test_state_json_export():
    state = StateVector.from_live(1, [0.6, 0.0])
    data = state_to_dict(state)
    assert data["amplitudes"] == [[0, 0.6, 0.0]]
    again = state_from_dict(data)
    np.testing.assert_array_equal(again.amps, state.amps)
