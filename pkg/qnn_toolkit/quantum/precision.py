"""
Dyadic grid quantisation of amplitudes and matrix entries.
"""

from functools import singledispatch
from typing import Union

import numpy as np

from .state import PrecisionSpec, StateVector, absorb_norm_drift
from .unitary import BlockBandedUnitary, UnitaryMatrix


PrecisionLike = Union[PrecisionSpec, int]


def precision_bits(precision: PrecisionLike) -> int:
    if isinstance(precision, PrecisionSpec):
        return precision.bits
    return PrecisionSpec(precision).bits


def _round_real(values: np.ndarray, bits: int) -> np.ndarray:
    # nearest multiple of 2^-p, ties toward zero
    scaled = np.abs(values) * float(1 << bits)
    return np.sign(values) * np.ceil(scaled - 0.5) / float(1 << bits)


def quantize_array(values, precision: PrecisionLike) -> np.ndarray:
    """Quantise real and imaginary parts of ``values`` independently."""
    bits = precision_bits(precision)
    arr = np.asarray(values)
    if np.iscomplexobj(arr):
        return _round_real(arr.real, bits) + 1j * _round_real(arr.imag, bits)
    return _round_real(arr.astype(np.float64), bits)


@singledispatch
def quantize(value, precision: PrecisionLike):
    """
    Replace every real and imaginary part by the nearest multiple of 2^-p.

    Ties round toward zero, so each component moves by at most 2^-(p+1) and
    quantising twice is the same as quantising once. Accepts scalars, numpy
    arrays, state vectors and (block-banded) unitary matrices; matrices come
    back marked with the precision they were rounded to. A state's sink is
    reset to 1 - live; if rounding pushed the live mass above 1 the live
    amplitudes are rescaled to unit norm, which takes them off the grid.
    """
    raise TypeError(f"cannot quantize values of type {type(value).__name__}")


@quantize.register(float)
@quantize.register(int)
def _(value, precision: PrecisionLike) -> float:
    return float(quantize_array(np.float64(value), precision))


@quantize.register(complex)
def _(value, precision: PrecisionLike) -> complex:
    return complex(quantize_array(np.complex128(value), precision))


@quantize.register(np.ndarray)
def _(value, precision: PrecisionLike) -> np.ndarray:
    return quantize_array(value, precision)


@quantize.register(StateVector)
def _(value: StateVector, precision: PrecisionLike) -> StateVector:
    amps = quantize_array(value.amps, precision)
    # rounding moves live mass; the sink takes up the difference
    state, _ = absorb_norm_drift(StateVector(value.num_qubits, amps, value.sink_prob))
    return state


@quantize.register(UnitaryMatrix)
def _(value: UnitaryMatrix, precision: PrecisionLike) -> UnitaryMatrix:
    bits = precision_bits(precision)
    return UnitaryMatrix(quantize_array(value.entries, bits), precision=bits)


@quantize.register(BlockBandedUnitary)
def _(value: BlockBandedUnitary, precision: PrecisionLike) -> BlockBandedUnitary:
    return BlockBandedUnitary(tuple(quantize(block, precision) for block in value.blocks))
