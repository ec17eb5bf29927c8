"""
Boolean circuit IR, structural passes and classical transforms.
"""

from .ir import (
    GateKind,
    Edge,
    Node,
    BoolCircuit,
    CircuitBuilder,
    size,
    depth,
    max_weight,
    max_fanin,
    all_assignments,
    eval_batch,
    eval_bruteforce,
    truth_table,
    equivalent,
)
from .structure import LeveledCircuit, open_circuit, levelize, split_outputs
from .transforms import (
    BoundsReport,
    CircuitBounds,
    th_gate_to_ec,
    tc_to_ec,
    et_gate_to_tc,
    ec_to_tc,
    weighted_tc_to_tc,
    nand_circuit_to_ec,
)
from .formats import format_circuit, parse_circuit, circuit_to_dict, circuit_from_dict

__all__ = [
    "GateKind", "Edge", "Node", "BoolCircuit", "CircuitBuilder",
    "size", "depth", "max_weight", "max_fanin", "all_assignments",
    "eval_batch", "eval_bruteforce", "truth_table", "equivalent",
    "LeveledCircuit", "open_circuit", "levelize", "split_outputs",
    "BoundsReport", "CircuitBounds", "th_gate_to_ec", "tc_to_ec", "et_gate_to_tc",
    "ec_to_tc", "weighted_tc_to_tc", "nand_circuit_to_ec",
    "format_circuit", "parse_circuit", "circuit_to_dict", "circuit_from_dict",
]
