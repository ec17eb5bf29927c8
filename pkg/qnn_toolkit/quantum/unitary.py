"""
Unitary operators: verification, orthonormal completion, block-banded
assembly and application to state vectors.
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
from scipy.linalg import block_diag

from ..errors import DimensionError
from .state import StateVector


UNITARY_TOLERANCE = 1e-10
UNIT_ROW_TOLERANCE = 1e-9
RESIDUAL_CUTOFF = 1e-8


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def check_unitary(matrix: np.ndarray, tol: float = UNITARY_TOLERANCE) -> bool:
    """True iff max |M^H M - I| < tol."""
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    deviation = m.conj().T @ m - np.eye(m.shape[0])
    return bool(np.max(np.abs(deviation), initial=0.0) < tol)


@dataclass(frozen=True, eq=False)
class UnitaryMatrix:
    """
    Dense 2^k x 2^k complex matrix.

    Unitarity is checked at construction unless the matrix carries a
    quantisation ``precision``, in which case it is a grid approximation of a
    unitary and only its shape is checked.
    """

    entries: np.ndarray
    precision: Optional[int] = None

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.complex128)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DimensionError(f"expected a square matrix, got shape {entries.shape}")
        if not _is_power_of_two(entries.shape[0]):
            raise DimensionError(f"matrix dimension {entries.shape[0]} is not a power of two")
        if not np.all(np.isfinite(entries)):
            raise ValueError("matrix entries must be finite")
        if self.precision is None and not check_unitary(entries):
            raise DimensionError("matrix is not unitary within 1e-10")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def num_qubits(self) -> int:
        return self.dim.bit_length() - 1

    def first_row(self) -> np.ndarray:
        return self.entries[0]


@dataclass(frozen=True, eq=False)
class BlockBandedUnitary:
    """Block-diagonal operator with equally sized unitary blocks."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if not blocks:
            raise DimensionError("a block-banded operator needs at least one block")
        block_dim = blocks[0].dim
        for i, block in enumerate(blocks):
            if block.dim != block_dim:
                raise DimensionError(
                    f"block {i} has dimension {block.dim}, expected {block_dim}")
        if not _is_power_of_two(len(blocks)):
            raise DimensionError(f"number of blocks {len(blocks)} is not a power of two")
        stack = np.stack([b.entries for b in blocks])
        stack.setflags(write=False)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "_stack", stack)

    @property
    def block_dim(self) -> int:
        return self.blocks[0].dim

    @property
    def dim(self) -> int:
        return self.block_dim * len(self.blocks)

    @property
    def num_qubits(self) -> int:
        return self.dim.bit_length() - 1

    @property
    def stack(self) -> np.ndarray:
        """Blocks as one (num_blocks, block_dim, block_dim) array."""
        return self._stack

    @property
    def precision(self) -> Optional[int]:
        precisions = {b.precision for b in self.blocks}
        return precisions.pop() if len(precisions) == 1 else None

    def to_dense(self) -> np.ndarray:
        return block_diag(*[b.entries for b in self.blocks])


Operator = Union[UnitaryMatrix, BlockBandedUnitary]


def complete_orthonormal_block(first_row: Sequence[complex]) -> UnitaryMatrix:
    """
    Complete ``first_row`` to a unitary matrix.

    Candidates are the standard basis vectors in index order, orthogonalised
    against the accepted rows by modified Gram-Schmidt (two sweeps); a
    candidate whose residual norm falls below 1e-8 is skipped.
    """
    row = np.asarray(first_row, dtype=np.complex128)
    if row.ndim != 1:
        raise DimensionError("first row must be a vector")
    dim = row.shape[0]
    if not _is_power_of_two(dim):
        raise DimensionError(f"row length {dim} is not a power of two")
    norm = float(np.linalg.norm(row))
    if norm == 0.0 or abs(norm - 1.0) > UNIT_ROW_TOLERANCE:
        raise ValueError(f"first row must have unit norm, got {norm}")

    rows = [row / norm]
    for k in range(dim):
        if len(rows) == dim:
            break
        candidate = np.zeros(dim, dtype=np.complex128)
        candidate[k] = 1.0
        for _ in range(2):
            for accepted in rows:
                candidate = candidate - np.vdot(accepted, candidate) * accepted
        residual = float(np.linalg.norm(candidate))
        if residual < RESIDUAL_CUTOFF:
            continue
        rows.append(candidate / residual)

    if len(rows) != dim:
        raise DimensionError(f"orthonormal completion produced {len(rows)} of {dim} rows")
    return UnitaryMatrix(np.vstack(rows))


def assemble_block_banded(blocks: Sequence[UnitaryMatrix]) -> BlockBandedUnitary:
    """Place ``blocks`` on the diagonal of one operator."""
    return BlockBandedUnitary(tuple(blocks))


def apply_unitary(operator: Operator, state: StateVector, low_qubits: int) -> StateVector:
    """
    Apply ``operator`` to the ``low_qubits`` least significant qubits of ``state``,
    identically for every value of the higher qubits. A block-banded operator
    must span the whole register.
    """
    if not 0 <= low_qubits <= state.num_qubits:
        raise DimensionError(
            f"cannot act on {low_qubits} qubits of a {state.num_qubits}-qubit state")
    if operator.dim != 1 << low_qubits:
        raise DimensionError(
            f"operator dimension {operator.dim} does not match {low_qubits} qubits")

    if isinstance(operator, BlockBandedUnitary):
        if low_qubits != state.num_qubits:
            raise DimensionError("a block-banded operator must act on the full register")
        tiles = state.amps.reshape(len(operator.blocks), operator.block_dim)
        amps = np.einsum("bij,bj->bi", operator.stack, tiles).reshape(-1)
    else:
        tiles = state.amps.reshape(-1, operator.dim)
        amps = (tiles @ operator.entries.T).reshape(-1)
    return StateVector(state.num_qubits, amps, state.sink_prob)


def build_nand_unitary() -> UnitaryMatrix:
    """
    The two-qubit NAND operator: its first row weighs (x1, 1, x2, 1)/2 so that
    the |00> amplitude vanishes exactly when both inputs are 1.
    """
    r6, r3, r2 = math.sqrt(6.0), math.sqrt(3.0), math.sqrt(2.0)
    entries = np.array([
        [1 / r6, 0.0, 1 / r6, -2 / r6],
        [1 / r3, 1 / r3, -1 / r3, 0.0],
        [1 / (3 * r2), r2 / 3, 1 / r2, r2 / 3],
        [2 / 3, -2 / 3, 0.0, 1 / 3],
    ])
    return UnitaryMatrix(entries)


def build_ancilla_transfer() -> UnitaryMatrix:
    """Swap |01> and |10> on (last register qubit, ancilla)."""
    entries = np.array([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])
    return UnitaryMatrix(entries)


def interleave_row(weights: Sequence[complex]) -> np.ndarray:
    """Place ``weights`` on the even slots of a row twice as long; odd slots stay 0."""
    weights = np.asarray(weights, dtype=np.complex128)
    row = np.zeros(2 * weights.shape[0], dtype=np.complex128)
    row[0::2] = weights
    return row
