"""
Exact state-vector model with sink-state bookkeeping.

Qubit 0 is the least significant bit of a basis index. Probability mass that
leaves the live register (discarded qubits, dissipated amplitudes) is kept in
a single scalar ``sink_prob`` so that live mass plus sink mass stays 1.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np

from ..errors import DimensionError

logger = logging.getLogger("qnn_toolkit.state")

NORM_TOLERANCE = 1e-9
SINK_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class StateVector:
    """Immutable complex amplitudes over 2^n basis states plus a sink probability."""

    num_qubits: int
    amps: np.ndarray
    sink_prob: float = 0.0

    def __post_init__(self):
        if self.num_qubits < 0:
            raise ValueError(f"num_qubits must be nonnegative, got {self.num_qubits}")
        amps = np.array(self.amps, dtype=np.complex128)
        if amps.ndim != 1 or amps.shape[0] != 1 << self.num_qubits:
            raise DimensionError(
                f"expected {1 << self.num_qubits} amplitudes for {self.num_qubits} qubits, "
                f"got shape {amps.shape}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        sink = float(self.sink_prob)
        if not math.isfinite(sink) or sink < -SINK_FLOOR:
            raise ValueError(f"sink probability must be finite and nonnegative, got {sink}")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)
        object.__setattr__(self, "sink_prob", sink)

    @classmethod
    def from_live(cls, num_qubits: int, amps: Sequence[complex]) -> "StateVector":
        """Build a state whose sink holds whatever mass the live amplitudes do not."""
        arr = np.asarray(amps, dtype=np.complex128)
        return cls(num_qubits, arr, 1.0 - float(np.sum(np.abs(arr) ** 2)))

    @property
    def dim(self) -> int:
        return self.amps.shape[0]

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def live_probability(self) -> float:
        return float(np.sum(self.probabilities()))

    def total_probability(self) -> float:
        return self.live_probability() + self.sink_prob

    def is_normalized(self, tol: float = NORM_TOLERANCE) -> bool:
        return abs(self.total_probability() - 1.0) < tol

    def nonzero(self, tol: float = 0.0) -> Iterable[Tuple[int, complex]]:
        """Yield (index, amplitude) for amplitudes with magnitude above ``tol``."""
        for index in np.flatnonzero(np.abs(self.amps) > tol):
            yield int(index), complex(self.amps[index])

    def __repr__(self) -> str:
        return (f"StateVector(num_qubits={self.num_qubits}, "
                f"nonzero={sum(1 for _ in self.nonzero())}, sink_prob={self.sink_prob:.6g})")


@dataclass(frozen=True)
class PrecisionSpec:
    """Dyadic grid with step 2^-bits."""

    bits: int

    def __post_init__(self):
        if int(self.bits) != self.bits or self.bits < 1:
            raise ValueError(f"precision must be a positive integer, got {self.bits}")

    @property
    def step(self) -> float:
        return math.ldexp(1.0, -self.bits)

    @property
    def max_error(self) -> float:
        """Largest distance from any value to its grid point."""
        return math.ldexp(1.0, -(self.bits + 1))


def absorb_norm_drift(state: StateVector) -> Tuple[StateVector, float]:
    """
    Restore live + sink = 1 after an operation that was only approximately
    norm preserving. A deficit goes to the sink; an excess rescales the live
    amplitudes to unit norm and empties the sink. Returns the new state and
    the drift (total probability minus 1) that was removed.
    """
    live = state.live_probability()
    drift = live + state.sink_prob - 1.0
    if live > 1.0:
        return StateVector(state.num_qubits, state.amps / math.sqrt(live), 0.0), drift
    return StateVector(state.num_qubits, state.amps, 1.0 - live), drift


def _check_qubit(num_qubits: int, qubit: int):
    if not 0 <= qubit < num_qubits:
        raise ValueError(f"qubit index {qubit} out of range for {num_qubits} qubits")


def basis_state(num_qubits: int, index: int) -> StateVector:
    """Return |index> on ``num_qubits`` qubits."""
    if num_qubits < 0:
        raise ValueError(f"num_qubits must be nonnegative, got {num_qubits}")
    if not 0 <= index < 1 << num_qubits:
        raise ValueError(f"basis index {index} out of range for {num_qubits} qubits")
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(num_qubits, amps, 0.0)


def encode_dense(bits: Sequence[int], unit_amp: float) -> StateVector:
    """
    Pack n = 2^m classical bits into m qubits: amplitude ``unit_amp`` on |j>
    for every set bit j, the remaining probability in the sink.
    """
    n = len(bits)
    if n == 0 or n & (n - 1):
        raise ValueError(f"number of bits must be a power of two, got {n}")
    values = np.array([int(b) for b in bits])
    if np.any((values != 0) & (values != 1)):
        raise ValueError("bits must be 0 or 1")
    live = unit_amp * unit_amp * float(values.sum())
    if live > 1.0 + NORM_TOLERANCE:
        raise ValueError(f"unit amplitude {unit_amp} gives live probability {live} > 1")
    amps = unit_amp * values.astype(np.complex128)
    return StateVector(n.bit_length() - 1, amps, max(0.0, 1.0 - live))


def _survivor_map(num_qubits: int, discarded: Sequence[int]) -> Tuple[np.ndarray, np.ndarray]:
    """Return (mask of indices whose discarded bits are all 0, their compressed index)."""
    indices = np.arange(1 << num_qubits)
    dmask = 0
    for q in discarded:
        dmask |= 1 << q
    keep = (indices & dmask) == 0
    compressed = np.zeros_like(indices)
    out_bit = 0
    for q in range(num_qubits):
        if dmask >> q & 1:
            continue
        compressed |= ((indices >> q) & 1) << out_bit
        out_bit += 1
    return keep, compressed


def discard_to_sink(state: StateVector, qubits: Iterable[int],
                    keep_register: bool = False) -> StateVector:
    """
    Send ``qubits`` to a sink gate.

    For every surviving basis pattern the amplitude of the representative whose
    discarded qubits are 0 is kept; all mass on states where a discarded qubit
    is 1 moves to the sink. No renormalisation. With ``keep_register`` the
    discarded qubits stay in the register pinned at |0>.
    """
    qubits = list(qubits)
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"duplicate qubit indices in {qubits}")
    for q in qubits:
        _check_qubit(state.num_qubits, q)

    keep, compressed = _survivor_map(state.num_qubits, qubits)
    lost = float(np.sum(np.abs(state.amps[~keep]) ** 2))
    if keep_register:
        amps = np.where(keep, state.amps, 0.0)
        return StateVector(state.num_qubits, amps, state.sink_prob + lost)

    survivors = state.num_qubits - len(qubits)
    amps = np.zeros(1 << survivors, dtype=np.complex128)
    amps[compressed[keep]] = state.amps[keep]
    return StateVector(survivors, amps, state.sink_prob + lost)


def measure_along_zero(state: StateVector, qubit: int,
                       rng_seed: int) -> Tuple[int, float, StateVector]:
    """
    Measure ``qubit`` along |0>.

    Returns (outcome, P(qubit = 0), post-measurement state). Sink mass counts
    toward outcome 1. The post-state is the renormalised projection.
    """
    _check_qubit(state.num_qubits, qubit)
    bit = (np.arange(state.dim) >> qubit) & 1
    probs = state.probabilities()
    p_zero = float(np.sum(probs[bit == 0]))

    rng = np.random.default_rng(rng_seed)
    outcome = 0 if rng.random() < p_zero else 1

    if outcome == 0:
        amps = np.where(bit == 0, state.amps, 0.0) / math.sqrt(p_zero)
        post = StateVector(state.num_qubits, amps, 0.0)
    else:
        p_one = float(np.sum(probs[bit == 1])) + state.sink_prob
        scale = math.sqrt(p_one)
        amps = np.where(bit == 1, state.amps, 0.0) / scale
        post = StateVector(state.num_qubits, amps, state.sink_prob / p_one)
    logger.debug("measured qubit %d: outcome=%d p0=%.12g", qubit, outcome, p_zero)
    return outcome, p_zero, post


def live_zero_probability(state: StateVector, qubit: int) -> float:
    """P(qubit = 0) conditioned on the live register (sink excluded)."""
    _check_qubit(state.num_qubits, qubit)
    live = state.live_probability()
    if live == 0.0:
        return 1.0
    bit = (np.arange(state.dim) >> qubit) & 1
    return float(np.sum(state.probabilities()[bit == 0])) / live


def append_ancilla(state: StateVector) -> StateVector:
    """Insert a fresh |0> qubit below the register; old qubit q becomes q+1."""
    amps = np.zeros(state.dim * 2, dtype=np.complex128)
    amps[0::2] = state.amps
    return StateVector(state.num_qubits + 1, amps, state.sink_prob)
