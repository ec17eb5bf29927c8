"""
EC circuit to QNN compilation: weight normalisation, block-banded unitary
synthesis and per-level threshold and precision planning.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from ..circuits.ir import BoolCircuit, Edge, GateKind, max_weight
from ..circuits.structure import LeveledCircuit, levelize, open_circuit, split_outputs
from ..errors import CircuitError, CompileError
from ..quantum.state import PrecisionSpec
from ..quantum.unitary import (
    UnitaryMatrix,
    assemble_block_banded,
    complete_orthonormal_block,
    interleave_row,
)
from .program import DGateSpec, InputEncoding, Leaf, QnnLayer, QnnProgram

logger = logging.getLogger("qnn_toolkit.compile")


def _check_level_args(level: int, fanin: int, weight_bound: int):
    if level < 1:
        raise ValueError(f"level must be at least 1, got {level}")
    if fanin < 1 or fanin & (fanin - 1):
        raise ValueError(f"fan-in must be a power of two, got {fanin}")
    if weight_bound < 1:
        raise ValueError(f"weight bound must be at least 1, got {weight_bound}")


def choose_delta(level: int, fanin: int, weight_bound: int) -> float:
    """δ_l = 1 / (2·s^(l/2)·√s·w), half the smallest nonzero normalised sum."""
    _check_level_args(level, fanin, weight_bound)
    return 1.0 / (2.0 * fanin ** (level / 2.0) * math.sqrt(fanin) * weight_bound)


def error_bound(level: int, fanin: int, weight_bound: int) -> float:
    """ε_l = 1 / (3^l·s^(l/2)·w)."""
    _check_level_args(level, fanin, weight_bound)
    return 1.0 / (3.0 ** level * fanin ** (level / 2.0) * weight_bound)


def required_precision(level: int, fanin: int, weight_bound: int) -> PrecisionSpec:
    """p = ⌈log2(3^l·s^(l/2)·w)⌉ + 1, so the grid error 2^-(p+1) stays below ε_l."""
    _check_level_args(level, fanin, weight_bound)
    magnitude = math.log2(3.0 ** level * fanin ** (level / 2.0) * weight_bound)
    # the slack keeps exact powers of two from rounding up
    return PrecisionSpec(math.ceil(magnitude - 1e-12) + 1)


def propagate_error_bound(eps_next: float, fanin: int) -> float:
    """Amplitude error at level l from entry error ε_(l+1) one level down."""
    if eps_next < 0.0:
        raise ValueError(f"error bound must be nonnegative, got {eps_next}")
    spread = math.sqrt(fanin) * eps_next
    return spread * spread + 2.0 * spread


@dataclass(frozen=True)
class LevelPlan:
    level: int
    delta: float
    eps: float
    precision: int


def precision_plan(depth: int, fanin: int, weight_bound: int) -> List[LevelPlan]:
    """δ_l, ε_l and p_l for l = 1..depth."""
    if depth < 1:
        raise ValueError(f"depth must be at least 1, got {depth}")
    return [LevelPlan(level,
                      choose_delta(level, fanin, weight_bound),
                      error_bound(level, fanin, weight_bound),
                      required_precision(level, fanin, weight_bound).bits)
            for level in range(1, depth + 1)]


def _block_for_gate(weights, block_dim: int) -> UnitaryMatrix:
    weights = np.asarray(weights, dtype=np.float64)
    norm = float(np.linalg.norm(weights))
    if norm == 0.0:
        # all-zero padding gate: first row on the scratch slot, so the checked amplitude is 0
        row = np.zeros(block_dim, dtype=np.complex128)
        row[1] = 1.0
    else:
        row = interleave_row(weights / norm)
    return complete_orthonormal_block(row)


def _leaf_for(leveled: LeveledCircuit, slot: int, edge: Edge) -> Leaf:
    node = leveled.circuit.node(edge.source)
    if node.kind is GateKind.INPUT:
        return Leaf(slot, "input", leveled.circuit.inputs.index(node.id), edge.negated)
    if node.kind is GateKind.CONST1:
        return Leaf(slot, "const1")
    if node.kind is GateKind.CONST0:
        return Leaf(slot, "const0")
    raise CompileError(f"leaf slot {slot // 2} reads gate {node.id!r}")


def _prepare(circuit: BoolCircuit, fanin: Optional[int]) -> LeveledCircuit:
    if len(circuit.outputs) != 1:
        raise CompileError(
            f"ec_to_qnn compiles single-output circuits, got {len(circuit.outputs)} outputs; "
            "use ec_to_qnn_per_output")
    other = {g.kind.value for g in circuit.gates if g.kind is not GateKind.ET}
    if other:
        raise CompileError(f"ec_to_qnn needs an EC circuit, found {sorted(other)} gates")
    try:
        opened = circuit if circuit.is_opened() else open_circuit(circuit)
        return levelize(opened, fanin)
    except CircuitError as exc:
        raise CompileError(str(exc)) from exc


def ec_to_qnn(circuit: BoolCircuit, fanin: Optional[int] = None) -> QnnProgram:
    """
    Compile a single-output EC circuit to a layered QNN.

    The circuit is opened and levelled to a complete s-ary tree of depth d.
    Gate j of level l becomes block j of the level-l unitary, whose first row
    is the normalised weight vector on the even slots; D(m+1, δ_l) then emits
    c_out = s^(-(l-1)/2) on the checked amplitude and q1..qm go to the sink.
    """
    leveled = _prepare(circuit, fanin)
    s, d = leveled.fanin, leveled.depth
    m = s.bit_length() - 1
    w = max(max_weight(leveled.circuit), 1)
    block_dim = 2 * s

    layers = []
    for level in range(d, 0, -1):
        delta = choose_delta(level, s, w)
        c_in = s ** (-level / 2.0)
        blocks = []
        for gate_id, weights in zip(leveled.levels[level - 1], leveled.level_weights(level)):
            norm = math.sqrt(sum(x * x for x in weights))
            if norm and c_in / norm <= delta:
                raise CompileError(
                    f"gate {gate_id!r} at level {level}: smallest nonzero amplitude "
                    f"{c_in / norm:.6g} does not exceed delta {delta:.6g}")
            blocks.append(_block_for_gate(weights, block_dim))
        dgate = DGateSpec(width=m + 1, delta=delta, c_out=s ** (-(level - 1) / 2.0))
        layers.append(QnnLayer(level, assemble_block_banded(blocks), dgate, tuple(range(1, m + 1))))
        logger.debug("level %d: %d blocks, delta=%.6g", level, len(blocks), delta)

    leaves = tuple(_leaf_for(leveled, 2 * k, edge) for k, edge in enumerate(leveled.leaves))
    encoding = InputEncoding(num_qubits=d * m + 1, one_value=s ** (-d / 2.0),
                             leaves=leaves, input_names=leveled.circuit.inputs)
    program = QnnProgram(m=m, d=d, fanin=s, layers=tuple(layers), encoding=encoding,
                         weight_bound=w, canonical=True)
    logger.info("ec_to_qnn: s=%d d=%d w=%d -> %d qubits, depth %d", s, d, w,
                program.num_qubits, program.gate_depth)
    return program


def ec_to_qnn_per_output(circuit: BoolCircuit, fanin: Optional[int] = None) -> List[QnnProgram]:
    """One program per circuit output, in output order."""
    return [ec_to_qnn(part, fanin) for part in split_outputs(circuit)]
