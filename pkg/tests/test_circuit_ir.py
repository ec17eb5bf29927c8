import numpy as np
import pytest

from qnn_toolkit.circuits import (
    BoolCircuit,
    CircuitBuilder,
    Edge,
    GateKind,
    Node,
    all_assignments,
    depth,
    equivalent,
    eval_batch,
    eval_bruteforce,
    max_fanin,
    max_weight,
    size,
    truth_table,
)
from qnn_toolkit.errors import CircuitError

from conftest import bit_rows, nand


def _et(weights):
    builder = CircuitBuilder()
    xs = [builder.add_input(f"x{i}") for i in range(1, len(weights) + 1)]
    gate = builder.et([Edge(x, w) for x, w in zip(xs, weights)])
    return builder.build([gate])


@pytest.mark.parametrize("bits,expected", [
    ((1, 1, 1), 0),
    ((0, 0, 0), 0),
    ((1, 0, 1), 1),
    ((0, 1, 0), 1),
])
def test_et_gate_outputs_zero_iff_sum_is_zero(bits, expected):
    assert eval_bruteforce(_et([1, 1, -2]), bits) == (expected,)


def test_et_single_weight():
    assert eval_bruteforce(_et([1]), (0,)) == (0,)
    assert eval_bruteforce(_et([1]), (1,)) == (1,)


def test_th_and_wth_thresholds():
    builder = CircuitBuilder()
    xs = [builder.add_input() for _ in range(3)]
    majority = builder.th([Edge(x) for x in xs], 2)
    weighted = builder.wth([Edge(xs[0], 2), Edge(xs[1], -1)], 1)
    circuit = builder.build([majority, weighted])
    for bits in bit_rows(3):
        maj = int(sum(bits) >= 2)
        wth = int(2 * bits[0] - bits[1] >= 1)
        assert eval_bruteforce(circuit, bits) == (maj, wth)


def test_nand_and_complemented_inputs():
    builder = CircuitBuilder()
    a, b = builder.add_input("a"), builder.add_input("b")
    circuit = builder.build([builder.nand(Edge(a, negated=True), Edge(b))])
    for x, y in bit_rows(2):
        assert eval_bruteforce(circuit, (x, y)) == (nand(1 - x, y),)


def test_constants():
    builder = CircuitBuilder()
    x = builder.add_input("x")
    one = builder.constant(1)
    assert builder.constant(1) == one
    gate = builder.et([Edge(x, 1), Edge(one, -1)])
    circuit = builder.build([gate])
    assert truth_table(circuit)[:, 0].tolist() == [1, 0]


def test_all_assignments_bit_order():
    rows = all_assignments(2)
    assert rows.tolist() == [[0, 0], [1, 0], [0, 1], [1, 1]]


def test_size_depth_weight():
    builder = CircuitBuilder()
    xs = [builder.add_input() for _ in range(3)]
    g1 = builder.et([Edge(xs[0], 3), Edge(xs[1], -1)])
    g2 = builder.et([Edge(g1, 1), Edge(xs[2], 2), Edge(xs[0], 1)])
    circuit = builder.build([g2])
    assert (size(circuit), depth(circuit), max_weight(circuit), max_fanin(circuit)) == (2, 2, 3, 3)


def test_circuit_validation():
    x = Node("x", GateKind.INPUT)
    with pytest.raises(CircuitError):
        BoolCircuit((x, x), ("x",))
    with pytest.raises(CircuitError):
        BoolCircuit((Node("g", GateKind.ET, (Edge("x"),)), x), ("g",))
    with pytest.raises(CircuitError):
        BoolCircuit((x, Node("g", GateKind.TH, (Edge("x"),), 2)), ("g",))
    with pytest.raises(CircuitError):
        BoolCircuit((x, Node("g", GateKind.ET, (Edge("x", 5),))), ("g",), weight_bound=4)
    with pytest.raises(CircuitError):
        BoolCircuit((x,), ())
    g = Node("g", GateKind.ET, (Edge("x"),))
    with pytest.raises(CircuitError):
        BoolCircuit((x, g, Node("h", GateKind.ET, (Edge("g", negated=True),))), ("h",))


def test_eval_batch_checks_width():
    with pytest.raises(CircuitError):
        eval_batch(_et([1, 1]), np.zeros((2, 3), dtype=np.int8))
    with pytest.raises(CircuitError):
        eval_bruteforce(_et([1, 1]), (1, 2))


def test_eval_handles_huge_weights():
    big = 1 << 70
    builder = CircuitBuilder()
    a, b = builder.add_input(), builder.add_input()
    circuit = builder.build([builder.et([Edge(a, big), Edge(b, -big)])])
    assert truth_table(circuit)[:, 0].tolist() == [0, 1, 1, 0]


def test_equivalent():
    assert equivalent(_et([1, -1]), _et([2, -2]))
    assert not equivalent(_et([1, -1]), _et([1, 1]))
    assert not equivalent(_et([1]), _et([1, 1]))


def test_builder_ids_avoid_reserved():
    builder = CircuitBuilder()
    builder.reserve(["g1"])
    x = builder.add_input()
    gate = builder.et([Edge(x)])
    assert gate != "g1"
    builder.et([Edge(gate)], node_id="g1")
    with pytest.raises(CircuitError):
        builder.et([Edge(gate)], node_id="g1")
