"""
Structural passes: opening a circuit into a tree, splitting outputs, and
levelling an opened equality circuit into a complete s-ary tree.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from ..errors import CircuitError
from .ir import BoolCircuit, CircuitBuilder, Edge, GateKind, depth, max_fanin

logger = logging.getLogger("qnn_toolkit.compile")


@dataclass(frozen=True)
class LeveledCircuit:
    """
    An opened EC circuit where every gate on level l reads exactly ``fanin``
    edges from level l + 1 and the output gate is level 1.

    ``levels[l - 1]`` lists the gate ids of level l so that the children of
    gate j are gates ``j*s .. j*s + s - 1`` of the next level, and ``leaves[k]``
    is the literal read by leaf slot k (child ``k mod s`` of bottom gate
    ``k // s``).
    """

    circuit: BoolCircuit
    fanin: int
    depth: int
    levels: Tuple[Tuple[str, ...], ...]
    leaves: Tuple[Edge, ...]

    @property
    def output(self) -> str:
        return self.circuit.outputs[0]

    def level_weights(self, level: int) -> List[Tuple[int, ...]]:
        """Weight vectors of the gates on ``level``, in gate order."""
        return [self.circuit.node(g).weights for g in self.levels[level - 1]]


def _reachable(circuit: BoolCircuit, roots) -> Set[str]:
    seen: Set[str] = set()
    stack = list(roots)
    while stack:
        node_id = stack.pop()
        if node_id in seen:
            continue
        seen.add(node_id)
        stack.extend(e.source for e in circuit.node(node_id).edges)
    return seen


def split_outputs(circuit: BoolCircuit) -> List[BoolCircuit]:
    """One single-output circuit per output, keeping every input."""
    parts = []
    for out in circuit.outputs:
        keep = _reachable(circuit, [out])
        nodes = tuple(n for n in circuit.nodes if n.kind is GateKind.INPUT or n.id in keep)
        parts.append(BoolCircuit(nodes, (out,), circuit.weight_bound))
    return parts


def open_circuit(circuit: BoolCircuit) -> BoolCircuit:
    """
    Duplicate gates with fan-out above 1 so the circuit becomes a tree over
    shared input and constant leaves. Requires a single output.
    """
    if len(circuit.outputs) != 1:
        raise CircuitError(
            f"open_circuit needs a single-output circuit, got {len(circuit.outputs)} outputs")

    builder = CircuitBuilder(circuit.weight_bound)
    builder.reserve(n.id for n in circuit.nodes)
    leaf_ids: Dict[str, str] = {}
    for node in circuit.nodes:
        if node.kind is GateKind.INPUT:
            leaf_ids[node.id] = builder.add_input(node.id)
    copies: Dict[str, int] = {}

    def copy(node_id: str) -> str:
        node = circuit.node(node_id)
        if node.kind.is_leaf:
            if node_id not in leaf_ids:
                leaf_ids[node_id] = builder.add_leaf(node)
            return leaf_ids[node_id]
        edges = [Edge(copy(e.source), e.weight, e.negated) for e in node.edges]
        count = copies.get(node_id, 0)
        copies[node_id] = count + 1
        new_id = node_id if count == 0 else f"{node_id}.{count}"
        while new_id in builder:
            count += 1
            new_id = f"{node_id}.{count}"
        return builder.add_gate(node.kind, edges, node.threshold, new_id)

    root = copy(circuit.outputs[0])
    opened = builder.build([root])
    duplicated = sum(c - 1 for c in copies.values())
    if duplicated:
        logger.debug("open_circuit duplicated %d gate copies", duplicated)
    return opened


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def levelize(circuit: BoolCircuit, fanin: Optional[int] = None) -> LeveledCircuit:
    """
    Level an opened single-output EC circuit.

    Leaves reached above the bottom level are lifted through dummy ET(1)
    gates, and every gate is padded to ``fanin`` edges of weight 0: from the
    constant-0 node at the bottom level, from an all-zero padding gate above
    it. ``fanin`` defaults to the smallest power of two covering the largest
    fan-in.
    """
    if len(circuit.outputs) != 1:
        raise CircuitError("levelize needs a single-output circuit")
    if not circuit.is_opened():
        raise CircuitError("levelize needs an opened circuit (fan-out 1)")
    bad = {g.kind.value for g in circuit.gates if g.kind is not GateKind.ET}
    if bad:
        raise CircuitError(f"levelize needs an EC circuit, found {sorted(bad)} gates")

    widest = max(max_fanin(circuit), 1)
    if fanin is None:
        fanin = 1 << (widest - 1).bit_length()
    if not _is_power_of_two(fanin):
        raise CircuitError(f"fan-in {fanin} is not a power of two")
    if fanin < widest:
        raise CircuitError(f"fan-in {fanin} is smaller than the circuit's fan-in {widest}")

    d = max(depth(circuit), 1)
    builder = CircuitBuilder(circuit.weight_bound)
    builder.reserve(n.id for n in circuit.nodes)
    leaf_ids: Dict[str, str] = {}
    for node in circuit.nodes:
        if node.kind is GateKind.INPUT:
            leaf_ids[node.id] = builder.add_input(node.id)
    const0 = builder.constant(0)
    dummies = 0

    def leaf(node_id: str) -> str:
        if node_id not in leaf_ids:
            leaf_ids[node_id] = builder.add_leaf(circuit.node(node_id))
        return leaf_ids[node_id]

    def padding_gate(level: int) -> str:
        if level == d:
            edges = [Edge(const0, 0)] * fanin
        else:
            edges = [Edge(padding_gate(level + 1), 0) for _ in range(fanin)]
        return builder.et(edges)

    def pad(edges: List[Edge], level: int) -> List[Edge]:
        # ``level`` is the level of the gate being padded
        while len(edges) < fanin:
            if level == d:
                edges.append(Edge(const0, 0))
            else:
                edges.append(Edge(padding_gate(level + 1), 0))
        return edges

    def place(edge: Edge, level: int) -> Edge:
        """Realise ``edge`` as an edge whose source sits on ``level``."""
        nonlocal dummies
        node = circuit.node(edge.source)
        if node.kind.is_leaf:
            if level == d + 1:
                return Edge(leaf(node.id), edge.weight, edge.negated)
            inner = place(Edge(node.id, 1, edge.negated), level + 1)
            dummies += 1
            return Edge(builder.et(pad([inner], level)), edge.weight)
        children = [place(e, level + 1) for e in node.edges]
        gate_id = builder.et(pad(children, level), node_id=node.id)
        return Edge(gate_id, edge.weight)

    top = place(Edge(circuit.outputs[0], 1), 1)
    leveled = builder.build([top.source])

    levels: List[Tuple[str, ...]] = [(top.source,)]
    for _ in range(d - 1):
        below = tuple(e.source for g in levels[-1] for e in leveled.node(g).edges)
        levels.append(below)
    leaves = tuple(e for g in levels[-1] for e in leveled.node(g).edges)
    logger.debug("levelize: depth %d, fan-in %d, %d dummy gates", d, fanin, dummies)
    return LeveledCircuit(leveled, fanin, d, tuple(levels), leaves)
