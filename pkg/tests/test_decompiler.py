import math

import numpy as np
import pytest

from qnn_toolkit.circuits import GateKind, depth, equivalent, split_outputs, truth_table
from qnn_toolkit.circuits.random_circuits import random_ec
from qnn_toolkit.errors import CompileError
from qnn_toolkit.qnn import (
    block_weights,
    ec_to_qnn,
    gaussian_integer_row,
    pack_weights,
    program_truth_table,
    qnn_to_ec,
    required_precision,
    three_nand_network,
)
from qnn_toolkit.qnn.decompiler import packing_shift
from qnn_toolkit.quantum import quantize_array

SEEDS = range(25)


def test_nand_round_trip(nand_ec, nand_program):
    circuit = qnn_to_ec(nand_program, 8)
    assert equivalent(circuit, nand_ec)
    assert depth(circuit) == 1
    top = circuit.node(circuit.outputs[0])
    assert top.kind is GateKind.ET
    weights = np.array(top.weights, dtype=float)
    # proportional to (1, 1, -2, 0)
    assert np.allclose(weights / weights[0], [1, 1, -2, 0])


def test_three_nand_round_trip(three_nand_ec, three_nand_program):
    bits = required_precision(2, 4, 2)
    circuit = qnn_to_ec(three_nand_program, bits)
    assert depth(circuit) == 2
    assert equivalent(circuit, three_nand_ec)


def test_random_ec_round_trip():
    for seed in SEEDS:
        for part in split_outputs(random_ec(seed)):
            program = ec_to_qnn(part)
            bits = required_precision(program.d, program.fanin, program.weight_bound)
            circuit = qnn_to_ec(program, bits)
            assert depth(circuit) == program.d, seed
            assert np.array_equal(truth_table(circuit), truth_table(part)), seed
            assert np.array_equal(truth_table(circuit), program_truth_table(program)), seed


def test_packing_shift():
    assert packing_shift(8, 8) == 11
    assert packing_shift(2, 4) == 5


def test_pack_complex_entry():
    bits = 8
    shift = packing_shift(8, bits)
    assert pack_weights(np.array([0.5j]), bits, shift) == [1 << (2 * shift - 1)]
    assert pack_weights(np.array([0.25 + 0.0j]), bits, shift) == [1 << (shift - 2)]


def test_packed_zero_check_needs_both_parts():
    bits = 4
    shift = packing_shift(4, bits)
    weights = pack_weights(np.array([0.5, -0.5j, -0.5, 0.5j]), bits, shift)
    for subset in range(16):
        chosen = [(subset >> k) & 1 for k in range(4)]
        real = 0.5 * chosen[0] - 0.5 * chosen[2]
        imag = -0.5 * chosen[1] + 0.5 * chosen[3]
        packed = sum(w for w, x in zip(weights, chosen) if x)
        assert (packed == 0) == (real == 0 and imag == 0)


def test_gaussian_integer_row():
    row = np.array([1, 0, 1, 0, -2, 0, 0, 0]) / math.sqrt(6)
    quantised = quantize_array(row.astype(complex), 8)
    g = gaussian_integer_row(quantised, 8)
    assert g is not None
    assert np.array_equal(g[0::2], [1, 1, -2, 0])
    assert np.array_equal(gaussian_integer_row(np.zeros(4, dtype=complex), 8), np.zeros(4))


def test_block_weights_zero_sets():
    row = np.zeros(8, dtype=complex)
    row[0::2] = np.array([1, 1, -2, 0]) / math.sqrt(6)
    weights = block_weights(row, 8, one_value=0.5, delta=1 / 16)
    assert len(weights) == 4
    assert weights[3] == 0
    assert weights[0] + weights[1] + weights[2] == 0


def test_qnn_to_ec_needs_compiled_layout():
    with pytest.raises(CompileError):
        qnn_to_ec(three_nand_network(), 8)
