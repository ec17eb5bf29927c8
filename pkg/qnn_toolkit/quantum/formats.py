"""
Text and JSON formats for state vectors and matrices.

State dump: one ``index<TAB>re<TAB>im`` line per nonzero amplitude, then
``sink<TAB>prob``. Matrix: ``dim <d>`` followed by d rows of ``re:im`` pairs.
Reals are written with 17 significant digits so a dump reads back exactly.
Lines starting with ``#`` are comments.
"""

import re
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np

from ..errors import ParseError
from .state import StateVector
from .unitary import UnitaryMatrix

_QUBITS_COMMENT = re.compile(r"^#\s*qubits=(\d+)\s*$", re.MULTILINE)


def fmt_real(value: float, digits: int = 17) -> str:
    return format(float(value), f".{digits}g")


def _content_lines(text: str) -> Iterable[Tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


def _parse_float(token: str, line: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"expected a number, got {token!r}", line=line) from None


def format_state(state: StateVector, digits: int = 17) -> str:
    lines = [f"# qubits={state.num_qubits}"]
    lines += [f"{index}\t{fmt_real(amp.real, digits)}\t{fmt_real(amp.imag, digits)}"
             for index, amp in state.nonzero()]
    lines.append(f"sink\t{fmt_real(state.sink_prob, digits)}")
    return "\n".join(lines) + "\n"


def parse_state(text: str, num_qubits: Optional[int] = None) -> StateVector:
    """
    Read a state dump. Without ``num_qubits`` the register size comes from a
    ``# qubits=<n>`` comment, or else is the smallest one that holds the
    largest index.
    """
    if num_qubits is None:
        declared = _QUBITS_COMMENT.search(text)
        if declared:
            num_qubits = int(declared.group(1))
    entries: Dict[int, complex] = {}
    sink: Optional[float] = None
    for number, line in _content_lines(text):
        fields = line.split()
        if fields[0] == "sink":
            if len(fields) != 2:
                raise ParseError("sink line must be 'sink <prob>'", line=number)
            sink = _parse_float(fields[1], number)
            continue
        if sink is not None:
            raise ParseError("amplitude after the sink line", line=number)
        if len(fields) != 3:
            raise ParseError("amplitude line must be '<index> <re> <im>'", line=number)
        try:
            index = int(fields[0])
        except ValueError:
            raise ParseError(f"bad basis index {fields[0]!r}", line=number) from None
        if index < 0 or index in entries:
            raise ParseError(f"invalid or repeated basis index {index}", line=number)
        entries[index] = complex(_parse_float(fields[1], number), _parse_float(fields[2], number))
    if sink is None:
        raise ParseError("missing sink line")

    if num_qubits is None:
        num_qubits = max(entries, default=0).bit_length()
    if entries and max(entries) >= 1 << num_qubits:
        raise ParseError(f"basis index {max(entries)} does not fit {num_qubits} qubits")
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    for index, amp in entries.items():
        amps[index] = amp
    return StateVector(num_qubits, amps, sink)


def format_matrix(entries: np.ndarray, digits: int = 17) -> str:
    entries = np.asarray(entries, dtype=np.complex128)
    lines = [f"dim {entries.shape[0]}"]
    for row in entries:
        lines.append(" ".join(f"{fmt_real(z.real, digits)}:{fmt_real(z.imag, digits)}" for z in row))
    return "\n".join(lines) + "\n"


def parse_matrix_lines(lines: List[Tuple[int, str]], start: int = 0) -> Tuple[np.ndarray, int]:
    """
    Parse one matrix from already split content lines beginning at ``start``.
    Returns the entries and the position after the matrix.
    """
    if start >= len(lines):
        raise ParseError("expected 'dim <d>', found end of input")
    number, header = lines[start]
    fields = header.split()
    if len(fields) != 2 or fields[0] != "dim":
        raise ParseError(f"expected 'dim <d>', got {header!r}", line=number)
    try:
        dim = int(fields[1])
    except ValueError:
        raise ParseError(f"bad dimension {fields[1]!r}", line=number) from None
    if dim < 1:
        raise ParseError(f"dimension must be positive, got {dim}", line=number)

    entries = np.zeros((dim, dim), dtype=np.complex128)
    for r in range(dim):
        position = start + 1 + r
        if position >= len(lines):
            raise ParseError(f"matrix ends after {r} of {dim} rows", line=number)
        row_number, row = lines[position]
        pairs = row.split()
        if len(pairs) != dim:
            raise ParseError(f"expected {dim} entries, got {len(pairs)}", line=row_number)
        for c, pair in enumerate(pairs):
            re_im = pair.split(":")
            if len(re_im) != 2:
                raise ParseError(f"entry {pair!r} is not 're:im'", line=row_number)
            entries[r, c] = complex(_parse_float(re_im[0], row_number),
                                    _parse_float(re_im[1], row_number))
    return entries, start + 1 + dim


def parse_matrix(text: str, precision: Optional[int] = None) -> UnitaryMatrix:
    lines = list(_content_lines(text))
    entries, end = parse_matrix_lines(lines)
    if end != len(lines):
        raise ParseError("trailing content after matrix", line=lines[end][0])
    return UnitaryMatrix(entries, precision=precision)


def content_lines(text: str) -> List[Tuple[int, str]]:
    """Non-blank, non-comment lines with their 1-based line numbers."""
    return list(_content_lines(text))


def state_to_dict(state: StateVector) -> Dict[str, Any]:
    return {
        "num_qubits": state.num_qubits,
        "amplitudes": [[index, amp.real, amp.imag] for index, amp in state.nonzero()],
        "sink_prob": state.sink_prob,
    }


def state_from_dict(data: Dict[str, Any]) -> StateVector:
    amps = np.zeros(1 << int(data["num_qubits"]), dtype=np.complex128)
    for index, real, imag in data.get("amplitudes", []):
        amps[int(index)] = complex(real, imag)
    return StateVector(int(data["num_qubits"]), amps, float(data["sink_prob"]))


def matrix_to_dict(entries: np.ndarray) -> Dict[str, Any]:
    entries = np.asarray(entries, dtype=np.complex128)
    return {
        "dim": int(entries.shape[0]),
        "entries": [[[z.real, z.imag] for z in row] for row in entries],
    }


def matrix_from_dict(data: Dict[str, Any]) -> np.ndarray:
    rows = [[complex(real, imag) for real, imag in row] for row in data["entries"]]
    return np.array(rows, dtype=np.complex128).reshape(int(data["dim"]), int(data["dim"]))
