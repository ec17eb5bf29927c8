"""
QNN programs: compilation from EC circuits, decompilation, simulation.
"""

from .program import DGateSpec, QnnLayer, Leaf, InputEncoding, QnnProgram
from .compiler import (
    LevelPlan,
    choose_delta,
    error_bound,
    required_precision,
    propagate_error_bound,
    precision_plan,
    ec_to_qnn,
    ec_to_qnn_per_output,
)
from .decompiler import qnn_to_ec, block_weights, gaussian_integer_row, pack_weights
from .runtime import (
    LayerTrace,
    SimulationResult,
    default_dynamics,
    encode_inputs,
    apply_dgate,
    read_output,
    quantize_program,
    simulate,
    program_truth_table,
)
from .examples import nand_input_state, nand_circuit, three_nand_circuit, three_nand_network
from .formats import format_program, parse_program, program_to_dict, program_from_dict

__all__ = [
    "DGateSpec", "QnnLayer", "Leaf", "InputEncoding", "QnnProgram",
    "LevelPlan", "choose_delta", "error_bound", "required_precision",
    "propagate_error_bound", "precision_plan", "ec_to_qnn", "ec_to_qnn_per_output",
    "qnn_to_ec", "block_weights", "gaussian_integer_row", "pack_weights",
    "LayerTrace", "SimulationResult", "default_dynamics", "encode_inputs", "apply_dgate",
    "read_output", "quantize_program", "simulate", "program_truth_table",
    "nand_input_state", "nand_circuit", "three_nand_circuit", "three_nand_network",
    "format_program", "parse_program", "program_to_dict", "program_from_dict",
]
