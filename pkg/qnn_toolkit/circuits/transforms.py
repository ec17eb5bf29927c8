"""
Constructive circuit equivalences: threshold to equality circuits, equality
to weighted threshold circuits, weighted to unit-weight threshold circuits,
and NAND to equality circuits. Each pass reports exact size, depth and
weight bounds of what it produced.
"""

import logging
from dataclasses import asdict, dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import CircuitError
from .ir import (
    BoolCircuit,
    CircuitBuilder,
    Edge,
    GateKind,
    Node,
    depth,
    max_weight,
    size,
)

logger = logging.getLogger("qnn_toolkit.compile")

TC_VARIANTS = ("merged", "naive")


@dataclass(frozen=True)
class CircuitBounds:
    size: int
    depth: int
    weight_bound: int

    @classmethod
    def of(cls, circuit: BoolCircuit) -> "CircuitBounds":
        return cls(size(circuit), depth(circuit), max_weight(circuit))


@dataclass(frozen=True)
class BoundsReport:
    """Exact bounds of a circuit before and after one pass."""

    pass_name: str
    before: CircuitBounds
    after: CircuitBounds

    @classmethod
    def compare(cls, pass_name: str, before: BoolCircuit, after: BoolCircuit) -> "BoundsReport":
        return cls(pass_name, CircuitBounds.of(before), CircuitBounds.of(after))

    def format_text(self) -> str:
        return (
            f"pass\t{self.pass_name}\n"
            f"size\t{self.before.size}\t{self.after.size}\n"
            f"depth\t{self.before.depth}\t{self.after.depth}\n"
            f"weight_bound\t{self.before.weight_bound}\t{self.after.weight_bound}\n"
        )

    def to_dict(self) -> Dict[str, object]:
        return {
            "pass": self.pass_name,
            "before": asdict(self.before),
            "after": asdict(self.after),
        }


def _require_kinds(circuit: BoolCircuit, allowed, what: str):
    bad = circuit.gate_kinds() - set(allowed)
    if bad:
        raise CircuitError(f"{what} expects only {sorted(k.value for k in allowed)} gates, "
                           f"found {sorted(k.value for k in bad)}")


def _copy_inputs(source: BoolCircuit, builder: CircuitBuilder) -> Dict[str, str]:
    builder.reserve(n.id for n in source.nodes)
    return {n.id: builder.add_input(n.id) for n in source.nodes if n.kind is GateKind.INPUT}


def _finish(builder: CircuitBuilder, outputs: Sequence[str], pass_name: str,
            source: BoolCircuit) -> BoolCircuit:
    draft = builder.build(outputs)
    result = BoolCircuit(draft.nodes, draft.outputs, max_weight(draft))
    report = BoundsReport.compare(pass_name, source, result)
    logger.info("%s: size %d -> %d, depth %d -> %d, weight bound %d -> %d", pass_name,
                report.before.size, report.after.size, report.before.depth,
                report.after.depth, report.before.weight_bound, report.after.weight_bound)
    return result


class _Sum:
    """A linear form over gate/leaf edges plus an integer constant."""

    def __init__(self):
        self.edges: List[Edge] = []
        self.constant = 0

    def add_edge(self, edge: Edge):
        self.edges.append(edge)

    def to_edges(self, builder: CircuitBuilder, offset: int = 0) -> List[Edge]:
        total = self.constant + offset
        edges = list(self.edges)
        if total != 0 or not edges:
            edges.append(Edge(builder.constant(1), total))
        return edges


def _threshold_checkers(builder: CircuitBuilder, form: _Sum, threshold: int) -> List[str]:
    """ET gates v = 0..threshold-1, gate v outputs 0 iff the form equals v."""
    return [builder.et(form.to_edges(builder, -v)) for v in range(threshold)]


def _checkers_top(builder: CircuitBuilder, checkers: List[str], threshold: int) -> str:
    if threshold == 0:
        return builder.et([Edge(builder.constant(1), 1)])
    top = _Sum()
    for checker in checkers:
        top.add_edge(Edge(checker, 1))
    return builder.et(top.to_edges(builder, -(threshold - 1)))


def th_gate_to_ec(threshold: int, fanin: int) -> BoolCircuit:
    """
    Depth-2 equality circuit for TH^{n,Δ} over inputs x1..xn: level-2 gate v
    checks Σx - v = 0 for v < Δ, and the output gate tests that fewer than Δ
    of them fired.
    """
    if not 0 <= threshold <= fanin:
        raise CircuitError(f"need 0 <= threshold <= fanin, got threshold {threshold}, fanin {fanin}")
    builder = CircuitBuilder()
    form = _Sum()
    for i in range(1, fanin + 1):
        form.add_edge(Edge(builder.add_input(f"x{i}"), 1))
    checkers = _threshold_checkers(builder, form, threshold)
    out = _checkers_top(builder, checkers, threshold)
    draft = builder.build([out])
    return BoolCircuit(draft.nodes, draft.outputs, max_weight(draft))


def tc_to_ec(circuit: BoolCircuit, variant: str = "merged") -> BoolCircuit:
    """
    Threshold circuit to equality circuit.

    ``merged``: every TH gate is represented only by its level-2 checkers; a
    consumer reads the checkers directly and folds the offset Δ_pred - 1 into
    its constant-1 weight, so only outputs gain a level (depth <= d + 1).
    ``naive``: every TH gate becomes a full two-level fragment (depth <= 2d).
    """
    if variant not in TC_VARIANTS:
        raise ValueError(f"unknown tc_to_ec variant {variant!r}, expected one of {TC_VARIANTS}")
    _require_kinds(circuit, (GateKind.TH,), "tc_to_ec")
    builder = CircuitBuilder()
    leaves = _copy_inputs(circuit, builder)
    checkers: Dict[str, List[str]] = {}
    tops: Dict[str, str] = {}
    outputs = set(circuit.outputs)

    def contribute(form: _Sum, edge: Edge):
        node = circuit.node(edge.source)
        if node.kind is GateKind.INPUT:
            form.add_edge(Edge(leaves[node.id], 1, edge.negated))
        elif node.kind is GateKind.CONST1:
            form.constant += 1
        elif node.kind is GateKind.CONST0:
            pass
        elif variant == "naive":
            form.add_edge(Edge(tops[node.id], 1))
        elif node.threshold == 0:
            form.constant += 1
        else:
            for checker in checkers[node.id]:
                form.add_edge(Edge(checker, 1))
            form.constant -= node.threshold - 1

    for node in circuit.gates:
        form = _Sum()
        for edge in node.edges:
            contribute(form, edge)
        checkers[node.id] = _threshold_checkers(builder, form, node.threshold)
        if variant == "naive" or node.id in outputs:
            tops[node.id] = _checkers_top(builder, checkers[node.id], node.threshold)

    out_ids = [tops.get(o) or _leaf_output(circuit, o, leaves, builder) for o in circuit.outputs]
    return _finish(builder, out_ids, f"tc_to_ec[{variant}]", circuit)


def _leaf_output(circuit: BoolCircuit, node_id: str, leaves: Dict[str, str],
                 builder: CircuitBuilder) -> str:
    node = circuit.node(node_id)
    if node.kind is GateKind.INPUT:
        return leaves[node_id]
    return builder.constant(1 if node.kind is GateKind.CONST1 else 0)


def et_gate_to_tc(weights: Sequence[int]) -> BoolCircuit:
    """Three WTH gates: g+ = [Σw·x >= 1], g- = [Σ-w·x >= 1], top = [g+ + g- >= 1]."""
    if not weights:
        raise CircuitError("an ET gate needs at least one weight")
    builder = CircuitBuilder()
    xs = [builder.add_input(f"x{i}") for i in range(1, len(weights) + 1)]
    plus = builder.wth([Edge(x, int(w)) for x, w in zip(xs, weights)], 1)
    minus = builder.wth([Edge(x, -int(w)) for x, w in zip(xs, weights)], 1)
    top = builder.wth([Edge(plus, 1), Edge(minus, 1)], 1)
    draft = builder.build([top])
    return BoolCircuit(draft.nodes, draft.outputs, max_weight(draft))


def ec_to_tc(circuit: BoolCircuit) -> BoolCircuit:
    """
    Equality circuit to weighted threshold circuit: each ET gate becomes its
    pair g+/g-, a consumer reading it with weight w reads both halves with
    weight w, and each output gets a top OR gate. Size 2s + o, depth <= d + 1.
    """
    _require_kinds(circuit, (GateKind.ET,), "ec_to_tc")
    builder = CircuitBuilder()
    leaves = _copy_inputs(circuit, builder)
    halves: Dict[str, Tuple[str, str]] = {}

    def lift(edge: Edge, sign: int) -> List[Edge]:
        node = circuit.node(edge.source)
        weight = sign * edge.weight
        if node.kind is GateKind.INPUT:
            return [Edge(leaves[node.id], weight, edge.negated)]
        if node.kind.is_leaf:
            return [Edge(builder.constant(1 if node.kind is GateKind.CONST1 else 0), weight)]
        plus, minus = halves[node.id]
        return [Edge(plus, weight), Edge(minus, weight)]

    for node in circuit.gates:
        plus = builder.wth([e for edge in node.edges for e in lift(edge, 1)], 1)
        minus = builder.wth([e for edge in node.edges for e in lift(edge, -1)], 1)
        halves[node.id] = (plus, minus)

    out_ids = []
    for out in circuit.outputs:
        if out in halves:
            plus, minus = halves[out]
            out_ids.append(builder.wth([Edge(plus, 1), Edge(minus, 1)], 1))
        else:
            out_ids.append(_leaf_output(circuit, out, leaves, builder))
    return _finish(builder, out_ids, "ec_to_tc", circuit)


def weighted_tc_to_tc(circuit: BoolCircuit, weight_bound: Optional[int] = None) -> BoolCircuit:
    """
    Weighted threshold circuit to unit-weight threshold circuit.

    Working from the outputs down, a gate that must be read complemented gets
    its weights negated and threshold 1 - Δ; a negative weight w on a
    predecessor becomes -w copies of the complemented predecessor with the
    threshold raised by -w; multiplicity k from a gate is realised by k
    copies of that gate, from an input or constant by k parallel edges.
    """
    _require_kinds(circuit, (GateKind.WTH, GateKind.TH), "weighted_tc_to_tc")
    if weight_bound is not None and max_weight(circuit) > weight_bound:
        raise CircuitError(
            f"circuit weight {max_weight(circuit)} exceeds the stated bound {weight_bound}")
    builder = CircuitBuilder()
    leaves = _copy_inputs(circuit, builder)
    memo: Dict[Tuple[str, bool], Edge] = {}

    def leaf_edge(node: Node, complemented: bool) -> Edge:
        if node.kind is GateKind.INPUT:
            return Edge(leaves[node.id], 1, complemented)
        value = 1 if node.kind is GateKind.CONST1 else 0
        return Edge(builder.constant(value ^ int(complemented)), 1)

    def clone(edge: Edge) -> Edge:
        original = builder.node(edge.source)
        return Edge(builder.th(original.edges, original.threshold), 1)

    def realise(node_id: str, complemented: bool) -> Edge:
        key = (node_id, complemented)
        if key in memo:
            return memo[key]
        node = circuit.node(node_id)
        if node.kind.is_leaf:
            memo[key] = leaf_edge(node, complemented)
            return memo[key]

        threshold = node.threshold
        weights = [e.weight for e in node.edges]
        if complemented:
            weights = [-w for w in weights]
            threshold = 1 - threshold

        edges: List[Edge] = []
        for edge, weight in zip(node.edges, weights):
            if weight == 0:
                continue
            source = circuit.node(edge.source)
            if edge.negated:
                source_complemented = weight > 0
            else:
                source_complemented = weight < 0
            if weight < 0:
                threshold -= weight
            copies = abs(weight)
            if source.kind.is_leaf:
                literal = leaf_edge(source, source_complemented)
                edges.extend([literal] * copies)
            else:
                first = realise(source.id, source_complemented)
                edges.append(first)
                edges.extend(clone(first) for _ in range(copies - 1))

        threshold = max(threshold, 0)
        if not edges:
            edges.append(Edge(builder.constant(0), 1))
        while len(edges) < threshold:
            edges.append(Edge(builder.constant(0), 1))
        memo[key] = Edge(builder.th(edges, threshold), 1)
        return memo[key]

    out_ids = []
    for out in circuit.outputs:
        node = circuit.node(out)
        out_ids.append(realise(out, False).source if not node.kind.is_leaf
                       else _leaf_output(circuit, out, leaves, builder))
    return _finish(builder, out_ids, "weighted_tc_to_tc", circuit)


def nand_circuit_to_ec(circuit: BoolCircuit) -> BoolCircuit:
    """Replace every NAND(a, b) by ET(a:1, b:1, 1:-2); weight bound 2, same depth."""
    _require_kinds(circuit, (GateKind.NAND,), "nand_circuit_to_ec")
    builder = CircuitBuilder()
    leaves = _copy_inputs(circuit, builder)
    mapped: Dict[str, str] = dict(leaves)

    def source(edge: Edge) -> Edge:
        node = circuit.node(edge.source)
        if node.id not in mapped:
            mapped[node.id] = builder.add_leaf(node)
        return Edge(mapped[node.id], 1, edge.negated)

    for node in circuit.gates:
        a, b = (source(e) for e in node.edges)
        mapped[node.id] = builder.et([a, b, Edge(builder.constant(1), -2)], node_id=node.id)

    out_ids = [mapped.get(o) or _leaf_output(circuit, o, leaves, builder) for o in circuit.outputs]
    return _finish(builder, out_ids, "nand_circuit_to_ec", circuit)
