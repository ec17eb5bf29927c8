"""
Layered QNN programs: a unitary layer, a D gate and a sink per level, plus
how classical inputs are laid out in the initial state.
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

from ..dynamics.dgate import DGateDynamics
from ..errors import CompileError
from ..quantum.unitary import BlockBandedUnitary, UnitaryMatrix

D_MODES = ("ideal", "ode")
LEAF_KINDS = ("input", "const0", "const1")

Operator = Union[UnitaryMatrix, BlockBandedUnitary]


@dataclass(frozen=True)
class DGateSpec:
    """
    D(width, δ) on the ``width`` least significant qubits.

    In every block the checked amplitude (local index 0) becomes ``c_out``
    when its magnitude exceeds ``delta`` and 0 otherwise; local indices in
    ``rails`` are set to ``c_out`` unconditionally; everything else goes to
    the sink. ``dynamics`` drives the ``ode`` mode.
    """

    width: int
    delta: float
    c_out: float
    mode: str = "ideal"
    dynamics: Optional[DGateDynamics] = None
    rails: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.width < 1:
            raise ValueError(f"D gate width must be at least 1, got {self.width}")
        if not self.delta > 0.0:
            raise ValueError(f"D gate threshold must be positive, got {self.delta}")
        if not self.c_out > 0.0:
            raise ValueError(f"D gate output constant must be positive, got {self.c_out}")
        if self.mode not in D_MODES:
            raise ValueError(f"unknown D gate mode {self.mode!r}, expected one of {D_MODES}")
        if self.mode == "ode" and self.dynamics is None:
            raise ValueError("ode mode needs D gate dynamics")
        object.__setattr__(self, "rails", tuple(int(r) for r in self.rails))
        for rail in self.rails:
            if not 0 < rail < 1 << self.width:
                raise ValueError(f"rail index {rail} outside 1..{(1 << self.width) - 1}")

    @property
    def block_dim(self) -> int:
        return 1 << self.width


@dataclass(frozen=True)
class QnnLayer:
    """One level: ``unitary`` on the whole register, then ``dgate``, then discard ``sink``."""

    level: int
    unitary: Operator
    dgate: DGateSpec
    sink: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sink", tuple(int(q) for q in self.sink))

    @property
    def num_qubits(self) -> int:
        return self.unitary.num_qubits


@dataclass(frozen=True)
class Leaf:
    """What sits in one input slot: an input (possibly complemented) or a constant."""

    slot: int
    kind: str
    input_index: Optional[int] = None
    negated: bool = False

    def __post_init__(self):
        if self.kind not in LEAF_KINDS:
            raise ValueError(f"unknown leaf kind {self.kind!r}")
        if (self.kind == "input") != (self.input_index is not None):
            raise ValueError("input leaves need an input index, constants must not have one")

    def value(self, bits) -> int:
        if self.kind == "const0":
            return 0
        if self.kind == "const1":
            return 1
        bit = int(bits[self.input_index])
        return 1 - bit if self.negated else bit


@dataclass(frozen=True)
class InputEncoding:
    """Initial register: amplitude ``one_value`` at the slot of every leaf that reads 1."""

    num_qubits: int
    one_value: float
    leaves: Tuple[Leaf, ...]
    input_names: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "leaves", tuple(self.leaves))
        object.__setattr__(self, "input_names", tuple(self.input_names))
        slots = [leaf.slot for leaf in self.leaves]
        if len(set(slots)) != len(slots):
            raise ValueError("input slots must be distinct")
        if any(not 0 <= s < 1 << self.num_qubits for s in slots):
            raise ValueError(f"input slot outside a {self.num_qubits}-qubit register")
        for leaf in self.leaves:
            if leaf.kind == "input" and not 0 <= leaf.input_index < len(self.input_names):
                raise ValueError(f"leaf reads input {leaf.input_index}, "
                                 f"only {len(self.input_names)} inputs declared")
        if not self.one_value > 0.0:
            raise ValueError(f"input amplitude must be positive, got {self.one_value}")

    @property
    def num_inputs(self) -> int:
        return len(self.input_names)


@dataclass(frozen=True)
class QnnProgram:
    """
    ``layers`` are in execution order (deepest level first). ``fanin`` s = 2^m
    and ``weight_bound`` describe the compiled circuit; the register shrinks
    by the sink of every layer until one qubit remains for the readout.
    """

    m: int
    d: int
    fanin: int
    layers: Tuple[QnnLayer, ...]
    encoding: InputEncoding
    weight_bound: Optional[int] = None
    canonical: bool = field(default=False)

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        if self.m < 0 or self.d < 1:
            raise CompileError(f"need m >= 0 and d >= 1, got m={self.m}, d={self.d}")
        if self.fanin != 1 << self.m:
            raise CompileError(f"fan-in {self.fanin} is not 2^m for m={self.m}")
        if len(self.layers) != self.d:
            raise CompileError(f"program declares d={self.d} but has {len(self.layers)} layers")
        qubits = self.encoding.num_qubits
        for position, layer in enumerate(self.layers):
            if layer.unitary.num_qubits != qubits:
                raise CompileError(
                    f"layer {position} unitary acts on {layer.unitary.num_qubits} qubits, "
                    f"register has {qubits}")
            if layer.dgate.width > qubits:
                raise CompileError(f"layer {position} D gate is wider than the register")
            if len(set(layer.sink)) != len(layer.sink) or any(
                    not 0 <= q < qubits for q in layer.sink):
                raise CompileError(f"layer {position} sink {layer.sink} is invalid")
            qubits -= len(layer.sink)
        if qubits < 1:
            raise CompileError("program sinks every qubit; nothing left to read out")
        if self.canonical:
            self._check_canonical()

    @property
    def num_qubits(self) -> int:
        return self.encoding.num_qubits

    @property
    def num_inputs(self) -> int:
        return self.encoding.num_inputs

    @property
    def gate_depth(self) -> int:
        """Unitary and D gate per layer."""
        return 2 * len(self.layers)

    def layer_for_level(self, level: int) -> QnnLayer:
        return self.layers[self.d - level]

    def input_one_value(self, level: int) -> float:
        """Amplitude that encodes a 1 on the input of ``level``."""
        if level == self.d:
            return self.encoding.one_value
        return self.layer_for_level(level + 1).dgate.c_out

    def _check_canonical(self):
        """Shape produced by the compiler: block dim 2^(m+1), register of l·m + 1 qubits."""
        m, block_dim = self.m, 1 << (self.m + 1)
        if self.num_qubits != self.d * m + 1:
            raise CompileError(f"canonical programs have {self.d * m + 1} qubits")
        for position, layer in enumerate(self.layers):
            level = self.d - position
            if layer.level != level:
                raise CompileError(f"layer {position} is labelled level {layer.level}, "
                                   f"expected {level}")
            unitary = layer.unitary
            if not isinstance(unitary, BlockBandedUnitary) or unitary.block_dim != block_dim:
                raise CompileError(f"level {level} unitary is not block-banded with "
                                   f"{block_dim}x{block_dim} blocks")
            if unitary.num_qubits != level * m + 1:
                raise CompileError(f"level {level} unitary has {unitary.num_qubits} qubits, "
                                   f"expected {level * m + 1}")
            if layer.dgate.width != m + 1 or layer.dgate.rails:
                raise CompileError(f"level {level} D gate is not a plain D({m + 1})")
            if layer.sink != tuple(range(1, m + 1)):
                raise CompileError(f"level {level} sink must be q1..q{m}")
        for leaf in self.encoding.leaves:
            if leaf.slot % 2:
                raise CompileError(f"canonical inputs sit on even slots, found slot {leaf.slot}")
