"""
QNN simulation: input encoding, layer application, the D gate in ideal and
ODE modes, optional ancilla collapse, and the readout.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..circuits.ir import all_assignments
from ..dynamics.dgate import DGateDynamics, integrate_amplitudes
from ..dynamics.dissipation import collapse_with_ancilla
from ..errors import CompileError, DimensionError
from ..quantum.precision import PrecisionLike, quantize
from ..quantum.state import (
    StateVector,
    absorb_norm_drift,
    append_ancilla,
    discard_to_sink,
    measure_along_zero,
)
from ..quantum.unitary import apply_unitary
from .compiler import required_precision
from .program import D_MODES, DGateSpec, QnnLayer, QnnProgram

logger = logging.getLogger("qnn_toolkit.runtime")

# dynamics for ode mode: fixed point 0.5 with the band (0.25, 0.75)
DEFAULT_DYNAMICS = {"delta": 0.5, "delta0": 0.25, "delta1": 0.75, "eps": None, "time": 1.0}


def default_dynamics(**overrides) -> DGateDynamics:
    params = dict(DEFAULT_DYNAMICS)
    params.update({k: v for k, v in overrides.items() if v is not None})
    return DGateDynamics.plan(**params)


def _parse_bits(bits, count: int) -> Tuple[int, ...]:
    if isinstance(bits, str):
        bits = [c for c in bits.strip()]
    values = tuple(int(b) for b in bits)
    if len(values) != count:
        raise ValueError(f"program has {count} inputs, got {len(values)} bits")
    if any(b not in (0, 1) for b in values):
        raise ValueError("input bits must be 0 or 1")
    return values


def encode_inputs(program: QnnProgram, bits) -> StateVector:
    """Initial register: ``one_value`` on every slot whose leaf reads 1."""
    encoding = program.encoding
    values = _parse_bits(bits, encoding.num_inputs)
    amps = np.zeros(1 << encoding.num_qubits, dtype=np.complex128)
    for leaf in encoding.leaves:
        if leaf.value(values):
            amps[leaf.slot] = encoding.one_value
    return StateVector.from_live(encoding.num_qubits, amps)


def _snap_ode(checked: np.ndarray, spec: DGateSpec, dynamics: DGateDynamics,
              integration: Dict[str, Any]) -> np.ndarray:
    # rescale so the gate threshold sits on the unstable fixed point
    kappa = dynamics.delta / spec.delta
    start = np.minimum(np.abs(checked) * kappa, 1.0)
    final = np.abs(integrate_amplitudes(start, dynamics, **integration).final)
    undecided = dynamics.snap_margin(final) > dynamics.eps
    if np.any(undecided):
        logger.warning("%d D gate amplitude(s) not within eps=%.3g of a fixed point after T=%.3g",
                       int(undecided.sum()), dynamics.eps, dynamics.time)
    return final > dynamics.delta


def apply_dgate(state: StateVector, spec: DGateSpec, mode: Optional[str] = None,
                dynamics: Optional[DGateDynamics] = None,
                integration: Optional[Dict[str, Any]] = None) -> StateVector:
    """
    Apply D(width, δ) to the ``width`` least significant qubits.

    Per block the checked amplitude becomes c_out when |a| > δ and 0
    otherwise (a tie goes to 0); rails are set to c_out; every other
    amplitude moves to the sink. ``mode`` overrides the gate's own mode.
    """
    mode = mode or spec.mode
    if mode not in D_MODES:
        raise ValueError(f"unknown D gate mode {mode!r}, expected one of {D_MODES}")
    if spec.width > state.num_qubits:
        raise DimensionError(
            f"D gate of width {spec.width} on a {state.num_qubits}-qubit state")
    tiles = state.amps.reshape(-1, spec.block_dim)
    checked = tiles[:, 0]
    if mode == "ideal":
        above = np.abs(checked) > spec.delta
    else:
        dynamics = dynamics or spec.dynamics or default_dynamics()
        above = _snap_ode(checked, spec, dynamics, integration or {})

    out = np.zeros_like(tiles)
    out[:, 0] = np.where(above, spec.c_out, 0.0)
    for rail in spec.rails:
        out[:, rail] = spec.c_out
    live_before = state.live_probability()
    amps = out.reshape(-1)
    live_after = float(np.sum(np.abs(amps) ** 2))
    sink = state.sink_prob + live_before - live_after
    if sink < -1e-9:
        raise CompileError(
            f"D gate output carries more probability ({live_after:.12g}) than is available")
    return StateVector(state.num_qubits, amps, max(sink, 0.0))


def read_output(state: StateVector) -> int:
    """1 iff |amp(|0>)|^2 > 1/2."""
    return int(abs(state.amps[0]) ** 2 > 0.5)


def quantize_program(program: QnnProgram, precision: Optional[PrecisionLike] = None) -> QnnProgram:
    """
    Quantise every unitary; without an explicit precision each level gets
    required_precision(l, s, w).
    """
    if precision is None and program.weight_bound is None:
        raise CompileError("program has no weight bound; pass an explicit precision")
    layers = []
    for layer in program.layers:
        bits = precision if precision is not None else required_precision(
            layer.level, program.fanin, program.weight_bound)
        layers.append(replace(layer, unitary=quantize(layer.unitary, bits)))
    return replace(program, layers=tuple(layers))


@dataclass(frozen=True)
class LayerTrace:
    """Checked amplitudes before the D gate and the register after the sink."""

    level: int
    checked: np.ndarray
    live: np.ndarray
    live_probability: float
    sink_prob: float
    # total probability minus 1 removed after a quantised unitary
    norm_drift: float = 0.0

    @property
    def total_probability(self) -> float:
        return self.live_probability + self.sink_prob

    def to_dict(self) -> Dict[str, Any]:
        return {
            "level": self.level,
            "checked": [[float(a.real), float(a.imag)] for a in self.checked],
            "live": [[float(a.real), float(a.imag)] for a in self.live],
            "live_probability": self.live_probability,
            "sink_prob": self.sink_prob,
            "norm_drift": self.norm_drift,
        }


@dataclass(frozen=True)
class SimulationResult:
    output: int
    final_state: StateVector
    measured: int
    p_zero: float
    traces: Tuple[LayerTrace, ...] = field(default_factory=tuple)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "output": self.output,
            "measured": self.measured,
            "p_zero": self.p_zero,
            "sink_prob": self.final_state.sink_prob,
            "layers": [t.to_dict() for t in self.traces],
        }


def _run_layer(state: StateVector, layer: QnnLayer, mode: Optional[str],
               dynamics: Optional[DGateDynamics], integration: Optional[Dict[str, Any]],
               ancilla_collapse: bool, seed: int) -> Tuple[StateVector, np.ndarray, float]:
    state = apply_unitary(layer.unitary, state, state.num_qubits)
    drift = 0.0
    # grid-rounded unitaries are only approximately norm preserving
    if layer.unitary.precision is not None:
        state, drift = absorb_norm_drift(state)
        if drift > 0.0:
            logger.debug("level %d: quantised layer raised total probability by %.3g, renormalised",
                         layer.level, drift)
    width = layer.dgate.width
    checked = state.amps.reshape(-1, layer.dgate.block_dim)[:, 0].copy()
    state = apply_dgate(state, layer.dgate, mode, dynamics, integration)
    if ancilla_collapse:
        if layer.dgate.rails:
            raise ValueError(f"level {layer.level}: ancilla collapse needs a D gate without rails")
        state = collapse_with_ancilla(append_ancilla(state), width, seed)
        state = discard_to_sink(state, [0])
    return discard_to_sink(state, layer.sink), checked, drift


def simulate(program: QnnProgram, bits, d_mode: Optional[str] = None,
             precision: Optional[PrecisionLike] = None,
             dynamics: Optional[DGateDynamics] = None,
             integration: Optional[Dict[str, Any]] = None,
             ancilla_collapse: bool = False, trace: bool = False,
             seed: int = 0) -> SimulationResult:
    """
    Run ``program`` on one input assignment.

    ``d_mode`` overrides every layer's D gate mode; ``precision`` quantises the
    program first. The output is read deterministically with read_output and
    q0 is additionally measured along |0> with ``seed``.
    """
    if precision is not None:
        program = quantize_program(program, precision)
    state = encode_inputs(program, bits)
    traces: List[LayerTrace] = []
    for layer in program.layers:
        state, checked, drift = _run_layer(state, layer, d_mode, dynamics, integration,
                                           ancilla_collapse, seed)
        logger.debug("level %d: %d qubits live=%.12g sink=%.12g", layer.level,
                     state.num_qubits, state.live_probability(), state.sink_prob)
        if trace:
            traces.append(LayerTrace(layer.level, checked, state.amps.copy(),
                                     state.live_probability(), state.sink_prob, drift))
    measured, p_zero, _ = measure_along_zero(state, 0, seed)
    return SimulationResult(read_output(state), state, measured, p_zero, tuple(traces))


def program_truth_table(program: QnnProgram, assignments: Optional[Sequence] = None,
                        **options) -> np.ndarray:
    """Outputs for ``assignments`` (all 2^n by default) as an (N, 1) uint8 array."""
    if assignments is None:
        assignments = all_assignments(program.num_inputs)
    precision = options.pop("precision", None)
    if precision is not None:
        program = quantize_program(program, precision)
    outputs = [simulate(program, row, **options).output for row in np.asarray(assignments)]
    return np.array(outputs, dtype=np.uint8).reshape(-1, 1)
