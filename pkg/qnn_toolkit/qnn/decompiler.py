"""
QNN to EC decompilation for programs in the compiled layered form.

Every block's unitary and the D gate that checks it merge into one ET gate:
the quantised first row supplies the weights, with real and imaginary
parts packed into one integer so that the sum vanishes exactly when both
parts do.
"""

import itertools
import logging
import math
from typing import Iterator, List, Optional, Sequence

import numpy as np

from ..circuits.ir import BoolCircuit, CircuitBuilder, Edge
from ..errors import CompileError
from ..quantum.precision import PrecisionLike, precision_bits, quantize_array
from .program import QnnProgram

logger = logging.getLogger("qnn_toolkit.compile")


def packing_shift(block_dim: int, bits: int) -> int:
    """A = ⌈log2 S⌉ + p for a block of S states."""
    return math.ceil(math.log2(block_dim)) + bits


def pack_weights(row: np.ndarray, bits: int, shift: int) -> List[int]:
    """Re·2^A + Im·2^(2A) for every entry of a row quantised at ``bits``."""
    scale = 1 << bits
    packed = []
    for value in row:
        re = int(round(value.real * scale)) << (shift - bits)
        im = int(round(value.imag * scale)) << (2 * shift - bits)
        packed.append(re + im)
    return packed


def _assignments(width: int) -> np.ndarray:
    return np.array(list(itertools.product((0, 1), repeat=width)), dtype=np.int64)


def _qnn_zero_set(row: np.ndarray, one_value: float, delta: float,
                  assignments: np.ndarray) -> np.ndarray:
    sums = assignments @ row
    return np.abs(one_value * sums) <= delta


def _integer_zero_set(weights: Sequence[int], assignments: np.ndarray) -> np.ndarray:
    sums = [sum(w for w, x in zip(weights, bits) if x) for bits in assignments.tolist()]
    return np.array([total == 0 for total in sums])


def _gaussian_candidates(row: np.ndarray, bits: int) -> Iterator[np.ndarray]:
    peak = float(np.max(np.abs(row), initial=0.0))
    if peak == 0.0:
        yield np.zeros_like(row)
        return
    for scale in range(1, (1 << bits) + 1):
        g = np.round(row.real * scale / peak) + 1j * np.round(row.imag * scale / peak)
        norm = float(np.linalg.norm(g))
        if norm and np.array_equal(quantize_array(g / norm, bits), row):
            yield g


def gaussian_integer_row(row: np.ndarray, bits: int) -> Optional[np.ndarray]:
    """
    Smallest Gaussian-integer vector g (by max |g_k|, up to 2^p) whose
    normalisation quantises back to ``row`` at ``bits``; None if there is none.
    """
    return next(_gaussian_candidates(row, bits), None)


def block_weights(first_row: np.ndarray, bits: int, one_value: float,
                  delta: float) -> List[int]:
    """
    Integer ET weights for one block, one per even slot.

    The packed quantised row is used when its zero set matches the block's
    thresholded D gate on every input; otherwise the row is first reduced to
    a Gaussian-integer form.
    """
    block_dim = first_row.shape[0]
    row = quantize_array(np.asarray(first_row, dtype=np.complex128), bits)
    inputs = row[0::2]
    assignments = _assignments(inputs.shape[0])
    expected = _qnn_zero_set(inputs, one_value, delta, assignments)
    shift = packing_shift(block_dim, bits)

    weights = pack_weights(inputs, bits, shift)
    if np.array_equal(_integer_zero_set(weights, assignments), expected):
        return weights
    for reduced in _gaussian_candidates(row, bits):
        weights = [int(g.real) * (1 << shift) + int(g.imag) * (1 << 2 * shift)
                   for g in reduced[0::2]]
        if np.array_equal(_integer_zero_set(weights, assignments), expected):
            logger.debug("block row reduced to Gaussian integers %s", reduced[0::2].tolist())
            return weights
    raise CompileError(
        f"no integer zero check matches the block row at precision {bits}")


def qnn_to_ec(program: QnnProgram, precision: PrecisionLike) -> BoolCircuit:
    """
    Rebuild an EC circuit of depth d from a compiled program.

    Blocks are quantised at ``precision``; the program must have the layered
    shape ec_to_qnn produces.
    """
    if not program.canonical:
        raise CompileError("qnn_to_ec needs a program in the compiled layered form")
    bits = precision_bits(precision)
    s = program.fanin

    builder = CircuitBuilder()
    inputs = [builder.add_input(name) for name in program.encoding.input_names]
    by_slot = {leaf.slot: leaf for leaf in program.encoding.leaves}

    def leaf_edge(k: int) -> Edge:
        leaf = by_slot.get(2 * k)
        if leaf is None or leaf.kind == "const0":
            return Edge(builder.constant(0))
        if leaf.kind == "const1":
            return Edge(builder.constant(1))
        return Edge(inputs[leaf.input_index], 1, leaf.negated)

    below: Optional[List[str]] = None
    for layer in program.layers:
        level = layer.level
        one_value = program.input_one_value(level)
        gates = []
        for j, block in enumerate(layer.unitary.blocks):
            weights = block_weights(block.first_row(), bits, one_value, layer.dgate.delta)
            if below is None:
                sources = [leaf_edge(j * s + i) for i in range(s)]
            else:
                sources = [Edge(below[j * s + i]) for i in range(s)]
            edges = [Edge(e.source, w, e.negated) for e, w in zip(sources, weights)]
            gates.append(builder.et(edges))
        logger.debug("qnn_to_ec level %d: %d ET gates", level, len(gates))
        below = gates

    circuit = builder.build([below[0]])
    logger.info("qnn_to_ec: depth %d, %d gates at precision %d", program.d,
                len(circuit.gates), bits)
    return circuit
