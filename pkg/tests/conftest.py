from pathlib import Path

import pytest

from qnn_toolkit.circuits import nand_circuit_to_ec
from qnn_toolkit.qnn import ec_to_qnn, nand_circuit, three_nand_circuit

PROJECT_ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture
def project_root() -> Path:
    return PROJECT_ROOT


@pytest.fixture
def config_path() -> str:
    return str(PROJECT_ROOT / "configs" / "config.json")


@pytest.fixture
def nand_ec():
    return nand_circuit_to_ec(nand_circuit())


@pytest.fixture
def nand_program(nand_ec):
    return ec_to_qnn(nand_ec)


@pytest.fixture
def three_nand_ec():
    return nand_circuit_to_ec(three_nand_circuit())


@pytest.fixture
def three_nand_program(three_nand_ec):
    return ec_to_qnn(three_nand_ec)


def bit_rows(n: int):
    """All n-bit tuples, input i taken from bit i of the row index."""
    return [tuple((k >> i) & 1 for i in range(n)) for k in range(1 << n)]


def nand(a: int, b: int) -> int:
    return 1 - (a & b)
