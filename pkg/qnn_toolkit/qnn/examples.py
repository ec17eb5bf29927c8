"""
Hand-built NAND networks: the two-qubit NAND operator and the three-NAND
network that feeds two NAND blocks into a third.
"""

import math
from typing import Optional

import numpy as np

from ..circuits.ir import BoolCircuit, CircuitBuilder, Edge
from ..quantum.state import StateVector
from ..quantum.unitary import assemble_block_banded, build_nand_unitary
from .program import DGateSpec, InputEncoding, Leaf, QnnLayer, QnnProgram


def nand_input_state(x1: int, x2: int) -> StateVector:
    """(1/2)[x1, 1, x2, 1] on two qubits, the rest in the sink."""
    for bit in (x1, x2):
        if bit not in (0, 1):
            raise ValueError(f"NAND inputs must be 0 or 1, got {bit}")
    return StateVector.from_live(2, 0.5 * np.array([x1, 1, x2, 1], dtype=np.complex128))


def nand_circuit() -> BoolCircuit:
    builder = CircuitBuilder()
    a, b = builder.add_input("x1"), builder.add_input("x2")
    return builder.build([builder.nand(Edge(a), Edge(b), "nand")])


def three_nand_circuit() -> BoolCircuit:
    """NAND(NAND(x1, x2), NAND(x3, x4))."""
    builder = CircuitBuilder()
    x = [builder.add_input(f"x{i}") for i in range(1, 5)]
    left = builder.nand(Edge(x[0]), Edge(x[1]), "n1")
    right = builder.nand(Edge(x[2]), Edge(x[3]), "n2")
    return builder.build([builder.nand(Edge(left), Edge(right), "out")])


def three_nand_network(delta1: Optional[float] = None,
                       delta2: Optional[float] = None) -> QnnProgram:
    """
    Three qubits carry (1/√8)[x1, 1, x2, 1, x3, 1, x4, 1]. Two NAND blocks act
    side by side; their D gate keeps a constant rail next to each result so
    that, after q1 goes to the sink, the register reads (1/2)[n1, 1, n2, 1]
    for the final NAND. Needs δ1 < 1/√48 and δ2 < 1/(2√6).
    """
    delta1 = 1.0 / (2.0 * math.sqrt(48.0)) if delta1 is None else delta1
    delta2 = 1.0 / (4.0 * math.sqrt(6.0)) if delta2 is None else delta2
    if not 0.0 < delta1 < 1.0 / math.sqrt(48.0):
        raise ValueError(f"delta1 must lie in (0, 1/sqrt(48)), got {delta1}")
    if not 0.0 < delta2 < 1.0 / (2.0 * math.sqrt(6.0)):
        raise ValueError(f"delta2 must lie in (0, 1/(2 sqrt(6))), got {delta2}")

    nand = build_nand_unitary()
    first = QnnLayer(2, assemble_block_banded([nand, nand]),
                     DGateSpec(width=2, delta=delta1, c_out=0.5, rails=(1,)), (1,))
    second = QnnLayer(1, nand, DGateSpec(width=2, delta=delta2, c_out=1.0), (1,))

    leaves = []
    for k in range(4):
        leaves.append(Leaf(2 * k, "input", k))
        leaves.append(Leaf(2 * k + 1, "const1"))
    encoding = InputEncoding(num_qubits=3, one_value=1.0 / math.sqrt(8.0), leaves=tuple(leaves),
                             input_names=("x1", "x2", "x3", "x4"))
    return QnnProgram(m=1, d=2, fanin=2, layers=(first, second), encoding=encoding)
