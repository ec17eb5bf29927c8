"""
Encoder operator that loads n classical bits into log n + 1 qubits.

Register layout, least significant first: the flag qubit z (qubit 0), the
address register i (m = log n qubits) and then the n classical bits b. The
operator is block diagonal with one 2n x 2n block per classical pattern b, so
it is applied one block at a time and the full matrix is never built.
"""

import logging
import math
from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np

from .state import StateVector, discard_to_sink
from .unitary import UnitaryMatrix, check_unitary, complete_orthonormal_block

logger = logging.getLogger("qnn_toolkit.state")

# 2^(n + log n + 1) amplitudes for apply(); n = 16 is already 2^21
MAX_APPLY_BITS = 16


def _normalise_bits(bits: Sequence[int], n: int) -> Tuple[int, ...]:
    values = tuple(int(b) for b in bits)
    if len(values) != n:
        raise ValueError(f"expected {n} bits, got {len(values)}")
    if any(v not in (0, 1) for v in values):
        raise ValueError("bits must be 0 or 1")
    return values


@lru_cache(maxsize=256)
def _encoder_block(bits: Tuple[int, ...]) -> UnitaryMatrix:
    n = len(bits)
    c = 1.0 / math.sqrt(n)
    column = np.empty(2 * n, dtype=np.float64)
    column[0::2] = bits
    column[1::2] = [1 - b for b in bits]
    completed = complete_orthonormal_block(c * column)
    # column 0 is the image of |0;0>
    return UnitaryMatrix(completed.entries.T)


class EncoderOperator:
    """Lazy block-diagonal encoder for ``n`` classical bits (n a power of two)."""

    def __init__(self, n: int):
        if n < 1 or n & (n - 1):
            raise ValueError(f"encoder bit count must be a power of two, got {n}")
        self.n = n
        self.address_qubits = n.bit_length() - 1
        self.block_qubits = self.address_qubits + 1

    @property
    def block_dim(self) -> int:
        return 2 * self.n

    @property
    def num_qubits(self) -> int:
        return self.n + self.block_qubits

    def block(self, bits: Sequence[int]) -> UnitaryMatrix:
        """The 2n x 2n block B_b acting on (address, flag) for classical pattern ``bits``."""
        return _encoder_block(_normalise_bits(bits, self.n))

    def blocks_are_unitary(self, tol: float = 1e-10) -> bool:
        """Check every block; only practical for small n."""
        for pattern in range(1 << self.n):
            bits = [(pattern >> i) & 1 for i in range(self.n)]
            if not check_unitary(self.block(bits).entries, tol):
                return False
        return True

    def encode(self, bits: Sequence[int]) -> StateVector:
        """
        Apply the encoder to |b; 0; 0> and return the state of the address and
        flag qubits. The classical register stays in |b> and factors out.
        """
        block = self.block(bits)
        amps = np.array(block.entries[:, 0])
        return StateVector(self.block_qubits, amps, 0.0)

    def encode_to_dense(self, bits: Sequence[int]) -> StateVector:
        """Encode, then send the flag qubit to the sink: the dense encoding with c = 1/sqrt(n)."""
        return discard_to_sink(self.encode(bits), [0])

    def apply(self, state: StateVector) -> StateVector:
        """Apply the full operator to a state on ``num_qubits`` qubits, block by block."""
        if self.n > MAX_APPLY_BITS:
            raise ValueError(
                f"full encoder application is limited to {MAX_APPLY_BITS} bits, got {self.n}")
        if state.num_qubits != self.num_qubits:
            raise ValueError(
                f"encoder acts on {self.num_qubits} qubits, state has {state.num_qubits}")
        tiles = np.array(state.amps.reshape(1 << self.n, self.block_dim))
        touched = 0
        for pattern in np.flatnonzero(np.any(tiles != 0, axis=1)):
            bits = [(int(pattern) >> i) & 1 for i in range(self.n)]
            tiles[pattern] = self.block(bits).entries @ tiles[pattern]
            touched += 1
        logger.debug("encoder applied to %d of %d classical blocks", touched, 1 << self.n)
        return StateVector(state.num_qubits, tiles.reshape(-1), state.sink_prob)

    def initial_state(self, bits: Sequence[int]) -> StateVector:
        """|b; 0; 0> on the full register."""
        values = _normalise_bits(bits, self.n)
        pattern = sum(b << i for i, b in enumerate(values))
        amps = np.zeros(1 << self.num_qubits, dtype=np.complex128)
        amps[pattern << self.block_qubits] = 1.0
        return StateVector(self.num_qubits, amps, 0.0)


def build_encoder_unitary(n: int) -> EncoderOperator:
    return EncoderOperator(n)
