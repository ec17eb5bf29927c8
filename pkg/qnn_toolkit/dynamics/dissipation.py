"""
Ancilla-assisted collapse after a D gate.

The ancilla is qubit 0 and the last qubit of the D register sits directly
above it at qubit 1, so the 4x4 transfer acts on the two least significant
qubits: it moves the amplitude of |..1;0> to |..0;1>, after which the
register qubit is found in |0> with certainty.
"""

import logging

import numpy as np

from ..quantum.state import StateVector, discard_to_sink, live_zero_probability
from ..quantum.unitary import apply_unitary, build_ancilla_transfer

logger = logging.getLogger("qnn_toolkit.dynamics")

ANCILLA_TOLERANCE = 1e-12


def transfer_to_ancilla(state: StateVector) -> StateVector:
    """Apply the transfer unitary to (qubit 1, ancilla qubit 0)."""
    if state.num_qubits < 2:
        raise ValueError("ancilla transfer needs at least two qubits")
    return apply_unitary(build_ancilla_transfer(), state, 2)


def _project(state: StateVector, qubit: int, outcome: int) -> StateVector:
    if outcome == 0:
        return discard_to_sink(state, [qubit], keep_register=True)
    bit = (np.arange(state.dim) >> qubit) & 1
    lost = float(np.sum(state.probabilities()[bit == 0]))
    amps = np.where(bit == 1, state.amps, 0.0)
    return StateVector(state.num_qubits, amps, state.sink_prob + lost)


def collapse_with_ancilla(state: StateVector, width: int, rng_seed: int) -> StateVector:
    """
    Transfer, then observe the register qubit next to the ancilla.

    ``state`` must carry a fresh ancilla: every amplitude with qubit 0 set
    has to vanish. The observation is a projection without renormalisation;
    mass on the other outcome goes to the sink. When the precondition holds
    the outcome is 0 with probability 1.
    """
    if width < 1:
        raise ValueError(f"D gate width must be at least 1, got {width}")
    if state.num_qubits < width + 1:
        raise ValueError(
            f"state of {state.num_qubits} qubits cannot hold a width-{width} register and ancilla")
    ancilla_set = (np.arange(state.dim) & 1) == 1
    stray = float(np.max(np.abs(state.amps[ancilla_set]), initial=0.0))
    if stray > ANCILLA_TOLERANCE:
        raise ValueError(f"ancilla is not in |0>: amplitude {stray:.3g} with ancilla set")

    moved = transfer_to_ancilla(state)
    p_zero = live_zero_probability(moved, 1)
    rng = np.random.default_rng(rng_seed)
    outcome = 0 if rng.random() < p_zero else 1
    if outcome:
        logger.warning("ancilla collapse observed 1 (P(0)=%.15g)", p_zero)
    else:
        logger.debug("ancilla collapse observed 0 (P(0)=%.15g)", p_zero)
    return _project(moved, 1, outcome)
