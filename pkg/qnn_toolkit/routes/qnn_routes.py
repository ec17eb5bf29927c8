"""
Compile routes between EC circuits and QNN programs.
"""

from typing import Dict, Any

from ..circuits.structure import split_outputs
from ..errors import CompileError
from ..qnn.compiler import ec_to_qnn, required_precision
from ..qnn.decompiler import qnn_to_ec
from ..qnn.runtime import quantize_program


def _ec_to_qnn(circuit, options: Dict[str, Any]):
    index = options.get("output_index")
    if index is None and len(circuit.outputs) > 1:
        raise CompileError(f"circuit has {len(circuit.outputs)} outputs; choose one with an output index")
    if index is not None:
        parts = split_outputs(circuit)
        if not 0 <= index < len(parts):
            raise CompileError(f"output index {index} out of range for {len(parts)} outputs")
        circuit = parts[index]
    program = ec_to_qnn(circuit, options.get("fanin"))
    if options.get("precision") is not None:
        program = quantize_program(program, options["precision"])
    return program


def _qnn_to_ec(program, options: Dict[str, Any]):
    precision = options.get("precision")
    if precision is None:
        if program.weight_bound is None:
            raise CompileError("program has no weight bound; pass a precision")
        precision = required_precision(program.d, program.fanin, program.weight_bound)
    return qnn_to_ec(program, precision)


def get_qnn_routes() -> Dict[str, Any]:
    """Get QNN routes configuration."""
    return {
        # open, levelize, one block-banded layer per level
        "ec_to_qnn": {
            "from": "ec",
            "to": "qnn",
            "run": _ec_to_qnn,
            "options": ["fanin", "output_index", "precision"],
        },

        # one ET gate per block, weights from the quantised first row
        "qnn_to_ec": {
            "from": "qnn",
            "to": "ec",
            "run": _qnn_to_ec,
            "options": ["precision"],
        },
    }
