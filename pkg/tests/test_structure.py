import pytest

from qnn_toolkit.circuits import (
    CircuitBuilder,
    Edge,
    depth,
    equivalent,
    levelize,
    open_circuit,
    split_outputs,
    truth_table,
)
from qnn_toolkit.errors import CircuitError


def _shared_gate_circuit():
    builder = CircuitBuilder()
    x1, x2, x3 = (builder.add_input(f"x{i}") for i in range(1, 4))
    shared = builder.et([Edge(x1, 1), Edge(x2, -1)], node_id="shared")
    top = builder.et([Edge(shared, 1), Edge(shared, 1), Edge(x3, -2)], node_id="top")
    return builder.build([top])


def test_open_circuit_duplicates_shared_gates():
    circuit = _shared_gate_circuit()
    assert not circuit.is_opened()
    opened = open_circuit(circuit)
    assert opened.is_opened()
    assert len(opened.gates) == 3
    assert equivalent(circuit, opened)


def test_open_circuit_needs_single_output():
    builder = CircuitBuilder()
    x = builder.add_input()
    g1, g2 = builder.et([Edge(x)]), builder.et([Edge(x, 2)])
    with pytest.raises(CircuitError):
        open_circuit(builder.build([g1, g2]))


def test_split_outputs_keeps_all_inputs():
    builder = CircuitBuilder()
    a, b = builder.add_input("a"), builder.add_input("b")
    g1 = builder.et([Edge(a)])
    g2 = builder.et([Edge(b)])
    parts = split_outputs(builder.build([g1, g2]))
    assert [p.outputs for p in parts] == [(g1,), (g2,)]
    assert all(p.num_inputs == 2 for p in parts)
    assert truth_table(parts[1])[:, 0].tolist() == [0, 0, 1, 1]


def test_levelize_nand_example_with_fanin_four(nand_ec):
    leveled = levelize(nand_ec, 4)
    assert (leveled.fanin, leveled.depth) == (4, 1)
    assert leveled.level_weights(1) == [(1, 1, -2, 0)]
    assert equivalent(leveled.circuit, nand_ec)


def test_levelize_inserts_pass_through_on_short_path():
    builder = CircuitBuilder()
    x1, x2, x3 = (builder.add_input(f"x{i}") for i in range(1, 4))
    inner = builder.et([Edge(x1, 1), Edge(x2, -1)])
    top = builder.et([Edge(inner, 1), Edge(x3, 1)])
    circuit = builder.build([top])
    leveled = levelize(circuit)
    assert leveled.depth == 2 and leveled.fanin == 2
    assert len(leveled.levels[1]) == 2
    dummy = leveled.circuit.node(leveled.levels[1][1])
    assert dummy.weights == (1, 0)
    assert depth(leveled.circuit) == 2
    assert equivalent(leveled.circuit, circuit)
    assert len(leveled.leaves) == 4


def test_levelize_rejects_unsuitable_circuits():
    with pytest.raises(CircuitError):
        levelize(_shared_gate_circuit())
    builder = CircuitBuilder()
    xs = [builder.add_input() for _ in range(3)]
    circuit = builder.build([builder.et([Edge(x) for x in xs])])
    with pytest.raises(CircuitError):
        levelize(circuit, 2)
    with pytest.raises(CircuitError):
        levelize(circuit, 6)
    th = CircuitBuilder()
    y = th.add_input()
    with pytest.raises(CircuitError):
        levelize(th.build([th.th([Edge(y)], 1)]))
