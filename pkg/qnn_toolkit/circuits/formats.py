"""
Text and JSON formats for circuits.

One node per line::

    <id> INPUT | CONST0 | CONST1
    <id> TH <Δ> <pred> ...
    <id> WTH <Δ> <w>:<pred> ...
    <id> ET <w>:<pred> ...
    <id> NAND <p1> <p2>
    OUTPUT <id> ...

A complemented input is written ``~<id>``. An optional ``# weight_bound=<w>``
comment declares the weight bound; other ``#`` lines are ignored.
"""

import re
from typing import Any, Dict, List, Optional

from ..errors import CircuitError, ParseError
from .ir import BoolCircuit, Edge, GateKind, Node

_WEIGHT_BOUND = re.compile(r"^#\s*weight_bound=(\d+)\s*$", re.MULTILINE)
_ID = re.compile(r"^[A-Za-z0-9_.\-\[\]]+$")


def _literal_text(edge: Edge) -> str:
    return ("~" if edge.negated else "") + edge.source


def format_circuit(circuit: BoolCircuit) -> str:
    lines = []
    if circuit.weight_bound is not None:
        lines.append(f"# weight_bound={circuit.weight_bound}")
    for node in circuit.nodes:
        kind = node.kind
        if kind.is_leaf:
            lines.append(f"{node.id} {kind.value}")
        elif kind is GateKind.TH:
            preds = " ".join(_literal_text(e) for e in node.edges)
            lines.append(f"{node.id} TH {node.threshold} {preds}".rstrip())
        elif kind is GateKind.WTH:
            terms = " ".join(f"{e.weight}:{_literal_text(e)}" for e in node.edges)
            lines.append(f"{node.id} WTH {node.threshold} {terms}".rstrip())
        elif kind is GateKind.ET:
            terms = " ".join(f"{e.weight}:{_literal_text(e)}" for e in node.edges)
            lines.append(f"{node.id} ET {terms}")
        else:
            preds = " ".join(_literal_text(e) for e in node.edges)
            lines.append(f"{node.id} NAND {preds}")
    lines.append("OUTPUT " + " ".join(circuit.outputs))
    return "\n".join(lines) + "\n"


def _parse_literal(token: str, line: int, weight: int = 1) -> Edge:
    negated = token.startswith("~")
    name = token[1:] if negated else token
    if not _ID.match(name):
        raise ParseError(f"bad node reference {token!r}", line=line)
    return Edge(name, weight, negated)


def _parse_int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"bad {what} {token!r}", line=line) from None


def _parse_term(token: str, line: int) -> Edge:
    weight, sep, ref = token.partition(":")
    if not sep:
        raise ParseError(f"expected '<weight>:<pred>', got {token!r}", line=line)
    return _parse_literal(ref, line, _parse_int(weight, line, "weight"))


def parse_circuit(text: str, path: Optional[str] = None) -> BoolCircuit:
    nodes: List[Node] = []
    outputs: Optional[List[str]] = None
    declared = _WEIGHT_BOUND.search(text)
    weight_bound = int(declared.group(1)) if declared else None

    try:
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            if fields[0] == "OUTPUT":
                if outputs is not None:
                    raise ParseError("more than one OUTPUT line", line=number)
                if len(fields) < 2:
                    raise ParseError("OUTPUT needs at least one node", line=number)
                outputs = fields[1:]
                continue
            if outputs is not None:
                raise ParseError("node definition after OUTPUT", line=number)
            if len(fields) < 2:
                raise ParseError(f"expected '<id> <KIND> ...', got {line!r}", line=number)
            node_id, kind_name, args = fields[0], fields[1], fields[2:]
            if not _ID.match(node_id):
                raise ParseError(f"bad node id {node_id!r}", line=number)
            try:
                kind = GateKind(kind_name)
            except ValueError:
                raise ParseError(f"unknown node kind {kind_name!r}", line=number) from None

            if kind.is_leaf:
                if args:
                    raise ParseError(f"{kind.value} takes no arguments", line=number)
                nodes.append(Node(node_id, kind))
            elif kind in (GateKind.TH, GateKind.WTH):
                if not args:
                    raise ParseError(f"{kind.value} needs a threshold", line=number)
                threshold = _parse_int(args[0], number, "threshold")
                if kind is GateKind.TH:
                    edges = tuple(_parse_literal(t, number) for t in args[1:])
                else:
                    edges = tuple(_parse_term(t, number) for t in args[1:])
                nodes.append(Node(node_id, kind, edges, threshold))
            elif kind is GateKind.ET:
                nodes.append(Node(node_id, kind, tuple(_parse_term(t, number) for t in args)))
            else:
                if len(args) != 2:
                    raise ParseError("NAND takes exactly two predecessors", line=number)
                nodes.append(Node(node_id, kind, tuple(_parse_literal(t, number) for t in args)))

        if outputs is None:
            raise ParseError("missing OUTPUT line")
        try:
            return BoolCircuit(tuple(nodes), tuple(outputs), weight_bound)
        except CircuitError as exc:
            raise ParseError(str(exc)) from exc
    except ParseError as exc:
        if path is not None and exc.path is None:
            raise exc.with_path(path) from exc
        raise


def circuit_to_dict(circuit: BoolCircuit) -> Dict[str, Any]:
    return {
        "weight_bound": circuit.weight_bound,
        "nodes": [
            {
                "id": node.id,
                "kind": node.kind.value,
                "threshold": node.threshold,
                "edges": [
                    {"source": e.source, "weight": e.weight, "negated": e.negated}
                    for e in node.edges
                ],
            }
            for node in circuit.nodes
        ],
        "outputs": list(circuit.outputs),
    }


def circuit_from_dict(data: Dict[str, Any]) -> BoolCircuit:
    nodes = tuple(
        Node(
            item["id"],
            GateKind(item["kind"]),
            tuple(Edge(e["source"], int(e.get("weight", 1)), bool(e.get("negated", False)))
                  for e in item.get("edges", [])),
            item.get("threshold"),
        )
        for item in data["nodes"]
    )
    return BoolCircuit(nodes, tuple(data["outputs"]), data.get("weight_bound"))
