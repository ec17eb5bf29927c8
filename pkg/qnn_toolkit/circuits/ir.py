"""
Boolean circuit IR: threshold, weighted threshold, equality-threshold and NAND
gates over a DAG with integer weights, plus the brute-force evaluator that
every pass is checked against.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import CircuitError


class GateKind(str, Enum):
    INPUT = "INPUT"
    CONST0 = "CONST0"
    CONST1 = "CONST1"
    TH = "TH"
    WTH = "WTH"
    ET = "ET"
    NAND = "NAND"

    @property
    def is_leaf(self) -> bool:
        return self in (GateKind.INPUT, GateKind.CONST0, GateKind.CONST1)


LEAF_KINDS = (GateKind.INPUT, GateKind.CONST0, GateKind.CONST1)


@dataclass(frozen=True)
class Edge:
    """A weighted reference to a predecessor; ``negated`` reads an input as its complement."""

    source: str
    weight: int = 1
    negated: bool = False


@dataclass(frozen=True)
class Node:
    id: str
    kind: GateKind
    edges: Tuple[Edge, ...] = ()
    threshold: Optional[int] = None

    @property
    def fanin(self) -> int:
        return len(self.edges)

    @property
    def weights(self) -> Tuple[int, ...]:
        return tuple(e.weight for e in self.edges)


@dataclass(frozen=True)
class BoolCircuit:
    """
    Immutable circuit. ``nodes`` are in topological order; the INPUT nodes, in
    the order they appear, define the input vector. ``weight_bound`` is the
    declared bound w on |weights| of ET and WTH gates, if any.
    """

    nodes: Tuple[Node, ...]
    outputs: Tuple[str, ...]
    weight_bound: Optional[int] = None
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        index: Dict[str, int] = {}
        for position, node in enumerate(self.nodes):
            if node.id in index:
                raise CircuitError(f"duplicate node id {node.id!r}")
            self._check_node(node, index)
            index[node.id] = position
        if not self.outputs:
            raise CircuitError("circuit has no outputs")
        for out in self.outputs:
            if out not in index:
                raise CircuitError(f"output {out!r} is not a node")
        object.__setattr__(self, "_index", index)

    def _check_node(self, node: Node, seen: Dict[str, int]):
        if node.kind.is_leaf:
            if node.edges:
                raise CircuitError(f"{node.kind.value} node {node.id!r} cannot have predecessors")
            return
        for edge in node.edges:
            if edge.source not in seen:
                raise CircuitError(
                    f"node {node.id!r} reads {edge.source!r}, which is undefined or not earlier "
                    "in topological order")
            if edge.negated and self.nodes[seen[edge.source]].kind is not GateKind.INPUT:
                raise CircuitError(
                    f"node {node.id!r}: only inputs can be read complemented, not {edge.source!r}")
            if int(edge.weight) != edge.weight:
                raise CircuitError(f"node {node.id!r}: weights must be integers")
        if node.kind is GateKind.TH:
            if any(e.weight != 1 for e in node.edges):
                raise CircuitError(f"TH gate {node.id!r} must have unit weights")
            if node.threshold is None or not 0 <= node.threshold <= node.fanin:
                raise CircuitError(
                    f"TH gate {node.id!r} needs 0 <= threshold <= {node.fanin}, "
                    f"got {node.threshold}")
        elif node.kind is GateKind.WTH:
            if node.threshold is None:
                raise CircuitError(f"WTH gate {node.id!r} needs a threshold")
        elif node.kind is GateKind.ET:
            if node.threshold is not None:
                raise CircuitError(f"ET gate {node.id!r} takes no threshold")
            if not node.edges:
                raise CircuitError(f"ET gate {node.id!r} needs at least one predecessor")
        elif node.kind is GateKind.NAND:
            if node.fanin != 2 or any(e.weight != 1 for e in node.edges):
                raise CircuitError(f"NAND gate {node.id!r} needs exactly two unit edges")
        if self.weight_bound is not None and node.kind in (GateKind.ET, GateKind.WTH):
            if any(abs(e.weight) > self.weight_bound for e in node.edges):
                raise CircuitError(
                    f"gate {node.id!r} exceeds the declared weight bound {self.weight_bound}")

    def node(self, node_id: str) -> Node:
        try:
            return self.nodes[self._index[node_id]]
        except KeyError:
            raise CircuitError(f"unknown node {node_id!r}") from None

    def position(self, node_id: str) -> int:
        return self._index[node_id]

    @property
    def inputs(self) -> Tuple[str, ...]:
        return tuple(n.id for n in self.nodes if n.kind is GateKind.INPUT)

    @property
    def num_inputs(self) -> int:
        return len(self.inputs)

    @property
    def gates(self) -> Tuple[Node, ...]:
        return tuple(n for n in self.nodes if not n.kind.is_leaf)

    def gate_kinds(self) -> set:
        return {n.kind for n in self.gates}

    def fanout(self) -> Dict[str, int]:
        counts = {n.id: 0 for n in self.nodes}
        for node in self.nodes:
            for edge in node.edges:
                counts[edge.source] += 1
        return counts

    def is_opened(self) -> bool:
        """True when every gate feeds at most one consumer edge."""
        counts = self.fanout()
        return all(counts[g.id] <= 1 for g in self.gates)


def size(circuit: BoolCircuit) -> int:
    """Number of gate nodes; inputs and constants do not count."""
    return len(circuit.gates)


def depth(circuit: BoolCircuit) -> int:
    """Largest number of gates on any input-to-output path."""
    level: Dict[str, int] = {}
    for node in circuit.nodes:
        if node.kind.is_leaf:
            level[node.id] = 0
        else:
            level[node.id] = 1 + max((level[e.source] for e in node.edges), default=0)
    return max(level[o] for o in circuit.outputs)


def max_weight(circuit: BoolCircuit) -> int:
    """Largest |weight| on any gate edge (1 for unweighted circuits)."""
    return max((abs(e.weight) for g in circuit.gates for e in g.edges), default=1) or 1


def max_fanin(circuit: BoolCircuit) -> int:
    return max((g.fanin for g in circuit.gates), default=0)


def all_assignments(num_inputs: int) -> np.ndarray:
    """All 2^n assignments; row k has input i set to bit i of k."""
    k = np.arange(1 << num_inputs, dtype=np.int64)
    return ((k[:, None] >> np.arange(num_inputs, dtype=np.int64)[None, :]) & 1).astype(np.int8)


def assignment_bits(index: int, num_inputs: int) -> Tuple[int, ...]:
    return tuple((index >> i) & 1 for i in range(num_inputs))


def _sum_dtype(circuit: BoolCircuit):
    # python ints past int64 range, e.g. decompiled complex weights at high precision
    biggest = max_weight(circuit) * max(max_fanin(circuit), 1)
    return object if biggest >= 1 << 62 else np.int64


def eval_batch(circuit: BoolCircuit, assignments: np.ndarray) -> np.ndarray:
    """
    Evaluate every row of ``assignments`` (shape (N, n), entries 0/1). Returns
    an (N, outputs) uint8 array.
    """
    assignments = np.asarray(assignments)
    if assignments.ndim != 2 or assignments.shape[1] != circuit.num_inputs:
        raise CircuitError(
            f"expected assignments of width {circuit.num_inputs}, got shape {assignments.shape}")
    rows = assignments.shape[0]
    dtype = _sum_dtype(circuit)
    values: Dict[str, np.ndarray] = {}
    next_input = 0
    for node in circuit.nodes:
        if node.kind is GateKind.INPUT:
            values[node.id] = assignments[:, next_input].astype(np.int64)
            next_input += 1
            continue
        if node.kind is GateKind.CONST0:
            values[node.id] = np.zeros(rows, dtype=np.int64)
            continue
        if node.kind is GateKind.CONST1:
            values[node.id] = np.ones(rows, dtype=np.int64)
            continue

        total = np.zeros(rows, dtype=dtype)
        for edge in node.edges:
            x = values[edge.source]
            if edge.negated:
                x = 1 - x
            total = total + x.astype(dtype) * int(edge.weight)
        if node.kind in (GateKind.TH, GateKind.WTH):
            out = total >= node.threshold
        elif node.kind is GateKind.ET:
            out = total != 0
        else:
            out = total != 2
        values[node.id] = np.asarray(out, dtype=np.int64)

    return np.stack([values[o] for o in circuit.outputs], axis=1).astype(np.uint8)


def eval_bruteforce(circuit: BoolCircuit, assignment: Sequence[int]) -> Tuple[int, ...]:
    """Evaluate one assignment; returns one bit per output."""
    bits = [int(b) for b in assignment]
    if len(bits) != circuit.num_inputs:
        raise CircuitError(
            f"circuit has {circuit.num_inputs} inputs, assignment has {len(bits)}")
    if any(b not in (0, 1) for b in bits):
        raise CircuitError("assignment bits must be 0 or 1")
    row = eval_batch(circuit, np.array([bits], dtype=np.int8))[0]
    return tuple(int(v) for v in row)


def truth_table(circuit: BoolCircuit) -> np.ndarray:
    """Outputs for all 2^n assignments in index order."""
    return eval_batch(circuit, all_assignments(circuit.num_inputs))


def equivalent(a: BoolCircuit, b: BoolCircuit) -> bool:
    """Exhaustive equivalence of two circuits with the same input and output counts."""
    if a.num_inputs != b.num_inputs or len(a.outputs) != len(b.outputs):
        return False
    return bool(np.array_equal(truth_table(a), truth_table(b)))


class CircuitBuilder:
    """
    Incremental construction helper. Generated ids never collide with ids
    added explicitly.
    """

    def __init__(self, weight_bound: Optional[int] = None):
        self._nodes: List[Node] = []
        self._ids: Dict[str, Node] = {}
        self._counter = 0
        self._const: Dict[GateKind, str] = {}
        self._reserved: set = set()
        self.outputs: List[str] = []
        self.weight_bound = weight_bound

    def _fresh(self, prefix: str) -> str:
        while True:
            self._counter += 1
            candidate = f"{prefix}{self._counter}"
            if candidate not in self._ids and candidate not in self._reserved:
                return candidate

    def _add(self, node: Node) -> str:
        if node.id in self._ids:
            raise CircuitError(f"duplicate node id {node.id!r}")
        self._nodes.append(node)
        self._ids[node.id] = node
        return node.id

    def reserve(self, node_ids: Iterable[str]):
        """Keep generated ids clear of ids that will be added explicitly later."""
        self._reserved.update(node_ids)

    def __contains__(self, node_id: str) -> bool:
        return node_id in self._ids

    def node(self, node_id: str) -> Node:
        return self._ids[node_id]

    def add_input(self, node_id: Optional[str] = None) -> str:
        return self._add(Node(node_id or self._fresh("x"), GateKind.INPUT))

    def constant(self, value: int, node_id: Optional[str] = None) -> str:
        """The (single) constant-0 or constant-1 node, created on first use."""
        kind = GateKind.CONST1 if value else GateKind.CONST0
        if kind not in self._const:
            self._const[kind] = self._add(Node(node_id or self._fresh("c"), kind))
        return self._const[kind]

    def add_leaf(self, node: Node) -> str:
        """Copy a leaf node, sharing constants."""
        if node.kind is GateKind.INPUT:
            return self.add_input(node.id)
        return self.constant(1 if node.kind is GateKind.CONST1 else 0, node.id)

    def add_gate(self, kind: GateKind, edges: Iterable[Edge], threshold: Optional[int] = None,
                 node_id: Optional[str] = None) -> str:
        return self._add(Node(node_id or self._fresh("g"), kind, tuple(edges), threshold))

    def et(self, edges: Iterable[Edge], node_id: Optional[str] = None) -> str:
        return self.add_gate(GateKind.ET, edges, node_id=node_id)

    def wth(self, edges: Iterable[Edge], threshold: int, node_id: Optional[str] = None) -> str:
        return self.add_gate(GateKind.WTH, edges, threshold, node_id)

    def th(self, edges: Iterable[Edge], threshold: int, node_id: Optional[str] = None) -> str:
        return self.add_gate(GateKind.TH, edges, threshold, node_id)

    def nand(self, a: Edge, b: Edge, node_id: Optional[str] = None) -> str:
        return self.add_gate(GateKind.NAND, (a, b), node_id=node_id)

    def build(self, outputs: Optional[Sequence[str]] = None,
              weight_bound: Optional[int] = None) -> BoolCircuit:
        return BoolCircuit(tuple(self._nodes), tuple(outputs or self.outputs),
                           weight_bound if weight_bound is not None else self.weight_bound)
