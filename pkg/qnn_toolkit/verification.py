"""
Equivalence checking of circuits and QNN programs.

Both artifacts are evaluated on the same assignments (all 2^n, or a seeded
sample) and every disagreement is reported. The assignment space is split
into chunks that run in worker threads under a semaphore; results are
gathered in chunk order, so a report does not depend on the concurrency.
"""

import asyncio
import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Protocol

import numpy as np

from .circuits.formats import circuit_from_dict, parse_circuit
from .circuits.ir import BoolCircuit, all_assignments, depth, eval_batch, max_weight, size
from .config import ConfigLoader
from .dynamics.dgate import DGateDynamics
from .errors import ParseError
from .qnn.formats import parse_program, program_from_dict
from .qnn.program import QnnProgram
from .qnn.runtime import program_truth_table, quantize_program
from .quantum.formats import content_lines

logger = logging.getLogger("qnn_toolkit.verify")

VERIFY_MODES = ("exhaustive", "sampled")


class BooleanArtifact(Protocol):
    name: str

    @property
    def num_inputs(self) -> int: ...

    def evaluate(self, assignments: np.ndarray) -> np.ndarray: ...

    def bounds(self) -> Dict[str, Any]: ...


@dataclass(frozen=True)
class CircuitArtifact:
    circuit: BoolCircuit
    name: str = "circuit"

    @property
    def num_inputs(self) -> int:
        return self.circuit.num_inputs

    def evaluate(self, assignments: np.ndarray) -> np.ndarray:
        return eval_batch(self.circuit, assignments)

    def bounds(self) -> Dict[str, Any]:
        return {"size": size(self.circuit), "depth": depth(self.circuit),
                "weight_bound": max_weight(self.circuit), "outputs": len(self.circuit.outputs)}


@dataclass(frozen=True)
class QnnArtifact:
    """A program simulated per assignment with fixed runtime options."""

    program: QnnProgram
    name: str = "qnn"
    d_mode: Optional[str] = None
    precision: Optional[int] = None
    dynamics: Optional[DGateDynamics] = None
    integration: Dict[str, Any] = field(default_factory=dict)
    ancilla_collapse: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.precision is not None:
            object.__setattr__(self, "program", quantize_program(self.program, self.precision))

    @property
    def num_inputs(self) -> int:
        return self.program.num_inputs

    def evaluate(self, assignments: np.ndarray) -> np.ndarray:
        return program_truth_table(self.program, assignments, d_mode=self.d_mode,
                                   dynamics=self.dynamics, integration=self.integration,
                                   ancilla_collapse=self.ancilla_collapse, seed=self.seed)

    def bounds(self) -> Dict[str, Any]:
        return {"qubits": self.program.num_qubits, "depth": self.program.gate_depth,
                "fanin": self.program.fanin, "weight_bound": self.program.weight_bound,
                "outputs": 1}


def load_artifact(path: str, **qnn_options) -> BooleanArtifact:
    """Read a circuit or QNN program file (text or JSON) as an artifact named after the file."""
    text = Path(path).read_text(encoding="utf-8")
    name = Path(path).name
    if path.endswith(".json"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, path=path) from None
        # CLI exports wrap the artifact next to a generator key
        data = data.get("program") or data.get("circuit") or data
        if "layers" in data:
            return QnnArtifact(program_from_dict(data), name, **qnn_options)
        return CircuitArtifact(circuit_from_dict(data), name)
    lines = content_lines(text)
    if lines and lines[0][1].split()[0] == "qnn":
        return QnnArtifact(parse_program(text, path), name, **qnn_options)
    return CircuitArtifact(parse_circuit(text, path), name)


@dataclass(frozen=True)
class Mismatch:
    assignment: str
    left: str
    right: str


@dataclass
class VerifyReport:
    left: str
    right: str
    num_inputs: int
    mode: str
    assignments_checked: int
    seed: Optional[int] = None
    mismatches: List[Mismatch] = field(default_factory=list)
    bounds: Dict[str, Dict[str, Any]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def format_text(self) -> str:
        mode = self.mode if self.mode == "exhaustive" else f"sampled {self.assignments_checked} seed={self.seed}"
        lines = [f"left\t{self.left}", f"right\t{self.right}", f"inputs\t{self.num_inputs}",
                 f"mode\t{mode}", f"checked\t{self.assignments_checked}",
                 f"mismatches\t{len(self.mismatches)}"]
        for side in ("left", "right"):
            for key, value in self.bounds.get(side, {}).items():
                lines.append(f"bound\t{side}\t{key}\t{value}")
        lines += [f"mismatch\t{m.assignment}\t{m.left}\t{m.right}" for m in self.mismatches]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "left": self.left,
            "right": self.right,
            "num_inputs": self.num_inputs,
            "mode": self.mode,
            "assignments_checked": self.assignments_checked,
            "seed": self.seed,
            "mismatches": [asdict(m) for m in self.mismatches],
            "bounds": self.bounds,
        }


def _bit_string(row) -> str:
    return "".join(str(int(b)) for b in row)


class VerificationRunner:
    """
    Async equivalence checker. Use as ``async with VerificationRunner(...) as runner``.
    """

    def __init__(self, config: Optional[ConfigLoader] = None,
                 max_concurrent_chunks: Optional[int] = None, chunk_size: Optional[int] = None,
                 max_exhaustive_inputs: Optional[int] = None):
        concurrency = config.get_concurrency_limits() if config else {}
        self.max_concurrent_chunks = max_concurrent_chunks or concurrency.get("max_concurrent_chunks", 4)
        self.chunk_size = chunk_size or concurrency.get("chunk_size", 256)
        self.max_exhaustive_inputs = max_exhaustive_inputs or (
            config.get("verification.max_exhaustive_inputs", 20) if config else 20)
        self.semaphore: Optional[asyncio.Semaphore] = None

    async def __aenter__(self):
        self.semaphore = asyncio.Semaphore(self.max_concurrent_chunks)
        return self

    async def __aexit__(self, exc_type, exc_val, exc_tb):
        self.semaphore = None

    def _assignments(self, num_inputs: int, mode: str, samples: int, seed: int) -> np.ndarray:
        if mode == "exhaustive":
            if num_inputs > self.max_exhaustive_inputs:
                raise ValueError(f"{num_inputs} inputs exceed the exhaustive limit of "
                                 f"{self.max_exhaustive_inputs}; use sampled mode")
            return all_assignments(num_inputs)
        if samples < 1:
            raise ValueError(f"sample count must be positive, got {samples}")
        rng = np.random.default_rng(seed)
        return rng.integers(0, 2, size=(samples, num_inputs), dtype=np.int64)

    async def _compare_chunk(self, left: BooleanArtifact, right: BooleanArtifact,
                             chunk: np.ndarray) -> List[Mismatch]:
        async with self.semaphore:
            a, b = await asyncio.gather(asyncio.to_thread(left.evaluate, chunk),
                                        asyncio.to_thread(right.evaluate, chunk))
        if a.shape != b.shape:
            raise ValueError(f"{left.name} has {a.shape[1]} outputs, {right.name} has {b.shape[1]}")
        differ = np.flatnonzero(np.any(a != b, axis=1))
        return [Mismatch(_bit_string(chunk[i]), _bit_string(a[i]), _bit_string(b[i])) for i in differ]

    async def verify(self, left: BooleanArtifact, right: BooleanArtifact,
                     mode: str = "exhaustive", samples: int = 256, seed: int = 0) -> VerifyReport:
        if mode not in VERIFY_MODES:
            raise ValueError(f"unknown verification mode {mode!r}, expected one of {VERIFY_MODES}")
        if left.num_inputs != right.num_inputs:
            raise ValueError(f"input arity mismatch: {left.name} has {left.num_inputs} inputs, "
                             f"{right.name} has {right.num_inputs}")
        if self.semaphore is None:
            raise RuntimeError("VerificationRunner must be used as an async context manager")

        assignments = self._assignments(left.num_inputs, mode, samples, seed)
        chunks = [assignments[i:i + self.chunk_size]
                  for i in range(0, assignments.shape[0], self.chunk_size)]
        logger.info("verify %s vs %s: %d assignments in %d chunks", left.name, right.name,
                    assignments.shape[0], len(chunks))
        results = await asyncio.gather(*(self._compare_chunk(left, right, c) for c in chunks))

        report = VerifyReport(left.name, right.name, left.num_inputs, mode, assignments.shape[0],
                              seed=None if mode == "exhaustive" else seed,
                              bounds={"left": left.bounds(), "right": right.bounds()})
        for mismatches in results:
            report.mismatches.extend(mismatches)
        if report.mismatches:
            logger.warning("verify %s vs %s: %d mismatches", left.name, right.name,
                           len(report.mismatches))
        return report
