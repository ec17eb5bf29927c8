import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qnn_toolkit.errors import DimensionError
from qnn_toolkit.quantum import (
    PrecisionSpec,
    StateVector,
    append_ancilla,
    basis_state,
    discard_to_sink,
    encode_dense,
    live_zero_probability,
    measure_along_zero,
)


def _random_state(seed: int, num_qubits: int, live: float = 1.0) -> StateVector:
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=1 << num_qubits) + 1j * rng.normal(size=1 << num_qubits)
    amps *= math.sqrt(live) / np.linalg.norm(amps)
    return StateVector.from_live(num_qubits, amps)


def test_from_live_puts_missing_mass_in_sink():
    state = StateVector.from_live(1, [0.6, 0.0])
    assert state.sink_prob == pytest.approx(0.64)
    assert state.is_normalized()


def test_state_rejects_wrong_length_and_negative_sink():
    with pytest.raises(DimensionError):
        StateVector(2, np.zeros(3))
    with pytest.raises(ValueError):
        StateVector(1, np.array([1.0, 0.0]), -0.5)


def test_state_amplitudes_are_read_only():
    state = basis_state(2, 3)
    with pytest.raises(ValueError):
        state.amps[0] = 1.0


def test_basis_state_range():
    assert basis_state(2, 2).amps[2] == 1.0
    with pytest.raises(ValueError):
        basis_state(2, 4)


def test_encode_dense_places_unit_amplitude_on_set_bits():
    state = encode_dense([1, 0, 1, 1], 0.5)
    assert state.num_qubits == 2
    np.testing.assert_allclose(state.amps, [0.5, 0.0, 0.5, 0.5])
    assert state.sink_prob == pytest.approx(0.25)


@pytest.mark.parametrize("bits", [[], [1, 0, 1], [1, 2]])
def test_encode_dense_rejects_bad_bits(bits):
    with pytest.raises(ValueError):
        encode_dense(bits, 0.5)


def test_encode_dense_rejects_overfull_amplitude():
    with pytest.raises(ValueError):
        encode_dense([1, 1], 0.9)


def test_discard_keeps_zero_representative():
    amps = np.array([0.5, 0.5, 0.5, 0.5])
    state = discard_to_sink(StateVector(2, amps), [0])
    assert state.num_qubits == 1
    np.testing.assert_allclose(state.amps, [0.5, 0.5])
    assert state.sink_prob == pytest.approx(0.5)


def test_discard_high_qubit_compresses_indices():
    amps = np.zeros(8)
    amps[0b011] = 0.6
    amps[0b100] = 0.8
    state = discard_to_sink(StateVector(3, amps), [2])
    np.testing.assert_allclose(state.amps, [0.0, 0.0, 0.0, 0.6])
    assert state.sink_prob == pytest.approx(0.64)


def test_discard_keep_register_pins_qubit():
    amps = np.array([0.6, 0.8, 0.0, 0.0])
    state = discard_to_sink(StateVector(2, amps), [0], keep_register=True)
    assert state.num_qubits == 2
    np.testing.assert_allclose(state.amps, [0.6, 0.0, 0.0, 0.0])


def test_discard_rejects_duplicates_and_range():
    state = basis_state(2, 0)
    with pytest.raises(ValueError):
        discard_to_sink(state, [1, 1])
    with pytest.raises(ValueError):
        discard_to_sink(state, [2])


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2 ** 16), st.integers(1, 4), st.data())
def test_discard_preserves_total_probability(seed, num_qubits, data):
    state = _random_state(seed, num_qubits, live=0.7)
    qubits = data.draw(st.lists(st.integers(0, num_qubits - 1), unique=True))
    after = discard_to_sink(state, qubits)
    assert after.total_probability() == pytest.approx(1.0, abs=1e-12)
    assert after.num_qubits == num_qubits - len(qubits)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2 ** 16), st.integers(1, 4), st.data())
def test_discard_in_register_is_idempotent(seed, num_qubits, data):
    state = _random_state(seed, num_qubits)
    qubits = data.draw(st.lists(st.integers(0, num_qubits - 1), unique=True, min_size=1))
    once = discard_to_sink(state, qubits, keep_register=True)
    twice = discard_to_sink(once, qubits, keep_register=True)
    np.testing.assert_array_equal(once.amps, twice.amps)
    assert once.sink_prob == pytest.approx(twice.sink_prob)


def test_measure_certain_zero():
    outcome, p_zero, post = measure_along_zero(basis_state(2, 2), 0, rng_seed=7)
    assert outcome == 0
    assert p_zero == pytest.approx(1.0)
    assert post.is_normalized()


def test_measure_counts_sink_toward_one():
    state = StateVector.from_live(1, [0.0, 0.0])
    outcome, p_zero, post = measure_along_zero(state, 0, rng_seed=0)
    assert (outcome, p_zero) == (1, 0.0)
    assert post.sink_prob == pytest.approx(1.0)


def test_measure_is_seed_deterministic():
    state = StateVector(1, np.array([1.0, 1.0]) / math.sqrt(2.0))
    first = measure_along_zero(state, 0, rng_seed=123)
    second = measure_along_zero(state, 0, rng_seed=123)
    assert first[0] == second[0]
    assert first[1] == pytest.approx(0.5)


def test_live_zero_probability_ignores_sink():
    state = StateVector.from_live(1, [0.3, 0.0])
    assert live_zero_probability(state, 0) == pytest.approx(1.0)


def test_append_ancilla_shifts_register():
    state = append_ancilla(basis_state(1, 1))
    assert state.num_qubits == 2
    assert state.amps[2] == 1.0


def test_precision_spec():
    assert PrecisionSpec(3).step == 0.125
    assert PrecisionSpec(3).max_error == 0.0625
    with pytest.raises(ValueError):
        PrecisionSpec(0)
