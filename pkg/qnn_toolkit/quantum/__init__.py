"""
State vectors, unitary operators and the encoder.
"""

from .state import (
    StateVector,
    PrecisionSpec,
    basis_state,
    encode_dense,
    discard_to_sink,
    measure_along_zero,
    live_zero_probability,
    append_ancilla,
    absorb_norm_drift,
)
from .unitary import (
    UnitaryMatrix,
    BlockBandedUnitary,
    check_unitary,
    complete_orthonormal_block,
    assemble_block_banded,
    apply_unitary,
    build_nand_unitary,
    build_ancilla_transfer,
    interleave_row,
)
from .precision import quantize, quantize_array
from .encoder import EncoderOperator, build_encoder_unitary

__all__ = [
    "StateVector", "PrecisionSpec", "basis_state", "encode_dense", "discard_to_sink",
    "measure_along_zero", "live_zero_probability", "append_ancilla", "absorb_norm_drift",
    "UnitaryMatrix", "BlockBandedUnitary", "check_unitary", "complete_orthonormal_block",
    "assemble_block_banded", "apply_unitary", "build_nand_unitary", "build_ancilla_transfer",
    "interleave_row", "quantize", "quantize_array", "EncoderOperator", "build_encoder_unitary",
]
