import math

import numpy as np
import pytest

from qnn_toolkit.quantum import EncoderOperator, build_encoder_unitary, check_unitary, encode_dense

from conftest import bit_rows


@pytest.mark.parametrize("n", [2, 4])
def test_encoder_blocks_are_unitary(n):
    encoder = EncoderOperator(n)
    assert encoder.blocks_are_unitary(1e-10)
    for bits in bit_rows(n):
        assert check_unitary(encoder.block(bits).entries, 1e-10)


@pytest.mark.parametrize("n", [2, 4])
def test_encoder_output_pattern(n):
    encoder = EncoderOperator(n)
    c = 1.0 / math.sqrt(n)
    for bits in bit_rows(n):
        amps = encoder.encode(bits).amps
        for i, b in enumerate(bits):
            assert abs(amps[2 * i] - c * b) < 1e-12
            assert abs(amps[2 * i + 1] - c * (1 - b)) < 1e-12


@pytest.mark.parametrize("n", [2, 4])
def test_encode_to_dense_matches_dense_encoding(n):
    encoder = EncoderOperator(n)
    for bits in bit_rows(n):
        dense = encoder.encode_to_dense(bits)
        expected = encode_dense(bits, 1.0 / math.sqrt(n))
        np.testing.assert_allclose(dense.amps, expected.amps, atol=1e-12)
        assert dense.sink_prob == pytest.approx(expected.sink_prob, abs=1e-12)


def test_full_application_leaves_classical_register():
    encoder = EncoderOperator(2)
    bits = (1, 0)
    out = encoder.apply(encoder.initial_state(bits))
    block = encoder.encode(bits).amps
    offset = 1 << encoder.block_qubits
    np.testing.assert_allclose(out.amps[offset:2 * offset], block, atol=1e-12)
    assert out.live_probability() == pytest.approx(1.0)


def test_encoder_argument_checks():
    with pytest.raises(ValueError):
        EncoderOperator(3)
    with pytest.raises(ValueError):
        EncoderOperator(2).encode([1, 0, 1])
    with pytest.raises(ValueError):
        EncoderOperator(2).apply(encode_dense([1, 0], 0.5))


def test_build_encoder_unitary_sizes():
    encoder = build_encoder_unitary(4)
    assert (encoder.block_dim, encoder.num_qubits) == (8, 7)
