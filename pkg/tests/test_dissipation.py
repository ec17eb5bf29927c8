import numpy as np
import pytest

from qnn_toolkit.dynamics import collapse_with_ancilla, transfer_to_ancilla
from qnn_toolkit.qnn import simulate
from qnn_toolkit.quantum import StateVector, append_ancilla, basis_state, live_zero_probability

from conftest import bit_rows


def _fresh_ancilla_state(seed: int, register_qubits: int) -> StateVector:
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=1 << register_qubits) + 1j * rng.normal(size=1 << register_qubits)
    amps *= 0.8 / np.linalg.norm(amps)
    return append_ancilla(StateVector.from_live(register_qubits, amps))


@pytest.mark.parametrize("seed", range(5))
def test_register_qubit_reads_zero_after_transfer(seed):
    state = _fresh_ancilla_state(seed, 2)
    moved = transfer_to_ancilla(state)
    assert abs(live_zero_probability(moved, 1) - 1.0) < 1e-12


@pytest.mark.parametrize("seed", range(5))
def test_collapse_loses_no_live_mass(seed):
    state = _fresh_ancilla_state(seed, 2)
    collapsed = collapse_with_ancilla(state, width=2, rng_seed=seed)
    assert collapsed.live_probability() == pytest.approx(state.live_probability(), abs=1e-12)
    assert collapsed.total_probability() == pytest.approx(1.0, abs=1e-12)


def test_collapse_shelters_one_amplitude_in_ancilla():
    state = append_ancilla(basis_state(2, 0b01))
    collapsed = collapse_with_ancilla(state, width=2, rng_seed=0)
    assert collapsed.amps[0b001] == 1.0


def test_collapse_preconditions():
    dirty = StateVector(2, np.array([0.0, 1.0, 0.0, 0.0]))
    with pytest.raises(ValueError):
        collapse_with_ancilla(dirty, width=1, rng_seed=0)
    with pytest.raises(ValueError):
        collapse_with_ancilla(append_ancilla(basis_state(1, 0)), width=2, rng_seed=0)
    with pytest.raises(ValueError):
        collapse_with_ancilla(append_ancilla(basis_state(1, 0)), width=0, rng_seed=0)


def test_collapse_commutes_with_nand_readout(nand_program):
    for bits in bit_rows(2):
        plain = simulate(nand_program, bits)
        collapsed = simulate(nand_program, bits, ancilla_collapse=True, seed=3)
        assert plain.output == collapsed.output
        assert collapsed.final_state.total_probability() == pytest.approx(1.0, abs=1e-12)
