"""
Text and JSON formats for QNN programs.

::

    qnn m=<m> d=<d> s=<s> qubits=<n> cin=<v> [w=<w>] layout=compiled|custom
    inputs <name> ...
    leaf <slot> <name> | ~<name> | const0 | const1
    layer <level> blocks=<k> | dense [precision=<p>]
    <k matrices in the matrix format>
    dgate width=<k> delta=<v> cout=<v> mode=ideal|ode [rails=<i>,...] [rate=.. ...]
    sink q1..q<m>

Layers appear in execution order, deepest level first.
"""

from typing import Any, Dict, List, Optional, Tuple

from ..dynamics.dgate import DGateDynamics
from ..errors import CompileError, ParseError
from ..quantum.formats import (
    content_lines,
    fmt_real,
    format_matrix,
    matrix_from_dict,
    matrix_to_dict,
    parse_matrix_lines,
)
from ..quantum.unitary import BlockBandedUnitary, UnitaryMatrix
from .program import DGateSpec, InputEncoding, Leaf, QnnLayer, QnnProgram

_DYNAMICS_KEYS = (("rate", "rate"), ("dyn_delta", "delta"), ("delta0", "delta0"),
                  ("delta1", "delta1"), ("eps", "eps"), ("time", "time"))


def _sink_text(sink: Tuple[int, ...]) -> str:
    if not sink:
        return "sink"
    if len(sink) > 1 and sink == tuple(range(sink[0], sink[-1] + 1)):
        return f"sink q{sink[0]}..q{sink[-1]}"
    return "sink " + " ".join(f"q{q}" for q in sink)


def _leaf_text(leaf: Leaf, names: Tuple[str, ...]) -> str:
    if leaf.kind != "input":
        return f"leaf {leaf.slot} {leaf.kind}"
    return f"leaf {leaf.slot} {'~' if leaf.negated else ''}{names[leaf.input_index]}"


def _dgate_text(spec: DGateSpec) -> str:
    parts = [f"dgate width={spec.width}", f"delta={fmt_real(spec.delta)}",
             f"cout={fmt_real(spec.c_out)}", f"mode={spec.mode}"]
    if spec.rails:
        parts.append("rails=" + ",".join(str(r) for r in spec.rails))
    if spec.dynamics is not None:
        parts += [f"{key}={fmt_real(getattr(spec.dynamics, attr))}"
                  for key, attr in _DYNAMICS_KEYS]
    return " ".join(parts)


def format_program(program: QnnProgram) -> str:
    encoding = program.encoding
    header = [f"qnn m={program.m}", f"d={program.d}", f"s={program.fanin}",
              f"qubits={program.num_qubits}", f"cin={fmt_real(encoding.one_value)}"]
    if program.weight_bound is not None:
        header.append(f"w={program.weight_bound}")
    header.append(f"layout={'compiled' if program.canonical else 'custom'}")
    lines = [" ".join(header), " ".join(("inputs",) + encoding.input_names)]
    lines += [_leaf_text(leaf, encoding.input_names) for leaf in encoding.leaves]
    for layer in program.layers:
        unitary = layer.unitary
        if isinstance(unitary, BlockBandedUnitary):
            blocks, head = unitary.blocks, f"layer {layer.level} blocks={len(unitary.blocks)}"
            precision = unitary.precision
        else:
            blocks, head = (unitary,), f"layer {layer.level} dense"
            precision = unitary.precision
        if precision is not None:
            head += f" precision={precision}"
        lines.append(head)
        for block in blocks:
            lines.append(format_matrix(block.entries).rstrip("\n"))
        lines.append(_dgate_text(layer.dgate))
        lines.append(_sink_text(layer.sink))
    return "\n".join(lines) + "\n"


def _key_values(fields: List[str], number: int) -> Dict[str, str]:
    values = {}
    for token in fields:
        key, sep, value = token.partition("=")
        if not sep or not key:
            raise ParseError(f"expected 'key=value', got {token!r}", line=number)
        values[key] = value
    return values


def _require(values: Dict[str, str], key: str, number: int, convert):
    if key not in values:
        raise ParseError(f"missing {key}=", line=number)
    try:
        return convert(values[key])
    except ValueError:
        raise ParseError(f"bad value for {key}: {values[key]!r}", line=number) from None


def _parse_sink(fields: List[str], number: int) -> Tuple[int, ...]:
    qubits: List[int] = []
    for token in fields:
        first, sep, last = token.partition("..")
        try:
            if sep:
                qubits.extend(range(int(first.lstrip("q")), int(last.lstrip("q")) + 1))
            else:
                qubits.append(int(token.lstrip("q")))
        except ValueError:
            raise ParseError(f"bad sink qubit {token!r}", line=number) from None
    return tuple(qubits)


def _parse_dgate(fields: List[str], number: int) -> DGateSpec:
    values = _key_values(fields, number)
    dynamics = None
    if "rate" in values:
        params = {attr: _require(values, key, number, float) for key, attr in _DYNAMICS_KEYS}
        try:
            dynamics = DGateDynamics(**params)
        except ValueError as exc:
            raise ParseError(str(exc), line=number) from None
    rails = ()
    if values.get("rails"):
        rails = tuple(_require(values, "rails", number,
                               lambda v: [int(r) for r in v.split(",")]))
    try:
        return DGateSpec(width=_require(values, "width", number, int),
                         delta=_require(values, "delta", number, float),
                         c_out=_require(values, "cout", number, float),
                         mode=values.get("mode", "ideal"), dynamics=dynamics, rails=rails)
    except ValueError as exc:
        raise ParseError(str(exc), line=number) from None


def parse_program(text: str, path: Optional[str] = None) -> QnnProgram:
    try:
        return _parse_program(text)
    except ParseError as exc:
        raise exc.with_path(path) if path else exc


def _parse_program(text: str) -> QnnProgram:
    lines = content_lines(text)
    if not lines:
        raise ParseError("empty program")
    number, first = lines[0]
    fields = first.split()
    if fields[0] != "qnn":
        raise ParseError(f"expected 'qnn m=<m> d=<d> ...', got {first!r}", line=number)
    header = _key_values(fields[1:], number)
    m = _require(header, "m", number, int)
    d = _require(header, "d", number, int)
    fanin = _require(header, "s", number, int) if "s" in header else 1 << m
    qubits = _require(header, "qubits", number, int) if "qubits" in header else d * m + 1
    one_value = _require(header, "cin", number, float) if "cin" in header else fanin ** (-d / 2.0)
    weight_bound = _require(header, "w", number, int) if "w" in header else None
    layout = header.get("layout", "compiled")
    if layout not in ("compiled", "custom"):
        raise ParseError(f"unknown layout {layout!r}", line=number)

    position = 1
    names: Tuple[str, ...] = ()
    if position < len(lines) and lines[position][1].split()[0] == "inputs":
        names = tuple(lines[position][1].split()[1:])
        position += 1
    leaves: List[Leaf] = []
    while position < len(lines) and lines[position][1].split()[0] == "leaf":
        number, line = lines[position]
        fields = line.split()
        if len(fields) != 3:
            raise ParseError("leaf line must be 'leaf <slot> <literal>'", line=number)
        try:
            slot = int(fields[1])
        except ValueError:
            raise ParseError(f"bad slot {fields[1]!r}", line=number) from None
        literal = fields[2]
        if literal in ("const0", "const1"):
            leaves.append(Leaf(slot, literal))
        else:
            negated = literal.startswith("~")
            name = literal.lstrip("~")
            if name not in names:
                raise ParseError(f"leaf reads undeclared input {name!r}", line=number)
            leaves.append(Leaf(slot, "input", names.index(name), negated))
        position += 1

    layers: List[QnnLayer] = []
    while position < len(lines):
        number, line = lines[position]
        fields = line.split()
        if fields[0] != "layer" or len(fields) < 3:
            raise ParseError(f"expected 'layer <level> ...', got {line!r}", line=number)
        try:
            level = int(fields[1])
        except ValueError:
            raise ParseError(f"bad level {fields[1]!r}", line=number) from None
        dense = fields[2] == "dense"
        options = _key_values(fields[3:] if dense else fields[2:], number)
        count = 1 if dense else _require(options, "blocks", number, int)
        precision = _require(options, "precision", number, int) if "precision" in options else None
        position += 1
        blocks = []
        for _ in range(count):
            entries, position = parse_matrix_lines(lines, position)
            try:
                blocks.append(UnitaryMatrix(entries, precision=precision))
            except ValueError as exc:
                raise ParseError(str(exc), line=number) from None
        unitary = blocks[0] if dense else BlockBandedUnitary(tuple(blocks))
        if position >= len(lines) or lines[position][1].split()[0] != "dgate":
            raise ParseError("layer needs a 'dgate' line after its matrices", line=number)
        dgate = _parse_dgate(lines[position][1].split()[1:], lines[position][0])
        position += 1
        if position >= len(lines) or lines[position][1].split()[0] != "sink":
            raise ParseError("layer needs a 'sink' line after its D gate", line=number)
        sink = _parse_sink(lines[position][1].split()[1:], lines[position][0])
        position += 1
        layers.append(QnnLayer(level, unitary, dgate, sink))

    try:
        encoding = InputEncoding(qubits, one_value, tuple(leaves), names)
        return QnnProgram(m=m, d=d, fanin=fanin, layers=tuple(layers), encoding=encoding,
                          weight_bound=weight_bound, canonical=layout == "compiled")
    except (ValueError, CompileError) as exc:
        raise ParseError(str(exc)) from None


def program_to_dict(program: QnnProgram) -> Dict[str, Any]:
    encoding = program.encoding
    layers = []
    for layer in program.layers:
        unitary = layer.unitary
        dense = not isinstance(unitary, BlockBandedUnitary)
        blocks = (unitary,) if dense else unitary.blocks
        spec = layer.dgate
        dgate: Dict[str, Any] = {"width": spec.width, "delta": spec.delta, "c_out": spec.c_out,
                                 "mode": spec.mode, "rails": list(spec.rails)}
        if spec.dynamics is not None:
            dgate["dynamics"] = {attr: getattr(spec.dynamics, attr) for _, attr in _DYNAMICS_KEYS}
        layers.append({
            "level": layer.level,
            "dense": dense,
            "precision": unitary.precision,
            "blocks": [matrix_to_dict(b.entries) for b in blocks],
            "dgate": dgate,
            "sink": list(layer.sink),
        })
    return {
        "m": program.m,
        "d": program.d,
        "fanin": program.fanin,
        "weight_bound": program.weight_bound,
        "canonical": program.canonical,
        "encoding": {
            "num_qubits": encoding.num_qubits,
            "one_value": encoding.one_value,
            "input_names": list(encoding.input_names),
            "leaves": [{"slot": leaf.slot, "kind": leaf.kind, "input_index": leaf.input_index,
                        "negated": leaf.negated} for leaf in encoding.leaves],
        },
        "layers": layers,
    }


def program_from_dict(data: Dict[str, Any]) -> QnnProgram:
    enc = data["encoding"]
    encoding = InputEncoding(
        int(enc["num_qubits"]), float(enc["one_value"]),
        tuple(Leaf(int(leaf["slot"]), leaf["kind"], leaf.get("input_index"),
                   bool(leaf.get("negated", False))) for leaf in enc["leaves"]),
        tuple(enc["input_names"]))
    layers = []
    for entry in data["layers"]:
        precision = entry.get("precision")
        blocks = [UnitaryMatrix(matrix_from_dict(b), precision=precision) for b in entry["blocks"]]
        unitary = blocks[0] if entry.get("dense") else BlockBandedUnitary(tuple(blocks))
        spec = entry["dgate"]
        dynamics = DGateDynamics(**spec["dynamics"]) if spec.get("dynamics") else None
        dgate = DGateSpec(int(spec["width"]), float(spec["delta"]), float(spec["c_out"]),
                          spec.get("mode", "ideal"), dynamics, tuple(spec.get("rails", ())))
        layers.append(QnnLayer(int(entry["level"]), unitary, dgate, tuple(entry["sink"])))
    return QnnProgram(m=int(data["m"]), d=int(data["d"]), fanin=int(data["fanin"]),
                      layers=tuple(layers), encoding=encoding,
                      weight_bound=data.get("weight_bound"),
                      canonical=bool(data.get("canonical", False)))
