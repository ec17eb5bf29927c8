"""
Seeded random circuit generators for randomized equivalence checks.
"""

from typing import List, Optional, Tuple

import numpy as np

from .ir import BoolCircuit, CircuitBuilder, Edge, GateKind


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _skeleton(rng: np.random.Generator, max_inputs: int, max_size: int, with_constant: bool):
    """
    Start a circuit: returns (builder, pool, depths, gate count). Pool entries
    are (node id, is_input).
    """
    builder = CircuitBuilder()
    n = int(rng.integers(2, max_inputs + 1))
    pool: List[Tuple[str, bool]] = [(builder.add_input(f"x{i}"), True) for i in range(1, n + 1)]
    depths = {node_id: 0 for node_id, _ in pool}
    if with_constant:
        const = builder.constant(1, "one")
        pool.append((const, False))
        depths[const] = 0
    num_gates = int(rng.integers(1, max_size + 1))
    return builder, pool, depths, num_gates


def _pick_sources(rng: np.random.Generator, pool, depths, max_depth: int,
                  fanin: int) -> List[Tuple[str, bool]]:
    usable = [entry for entry in pool if depths[entry[0]] < max_depth]
    picks = rng.choice(len(usable), size=min(fanin, len(usable)), replace=False)
    return [usable[int(i)] for i in picks]


def _literal(rng: np.random.Generator, node_id: str, is_input: bool, weight: int = 1) -> Edge:
    return Edge(node_id, weight, bool(is_input and rng.random() < 0.3))


def _outputs(rng: np.random.Generator, gates: List[str]) -> List[str]:
    outs = [gates[-1]]
    if len(gates) > 1 and rng.random() < 0.3:
        outs.append(gates[int(rng.integers(0, len(gates) - 1))])
    return outs


def random_tc(seed, max_inputs: int = 6, max_size: int = 8, max_depth: int = 3,
              max_fanin: int = 3) -> BoolCircuit:
    """Random unit-weight threshold circuit."""
    rng = _rng(seed)
    builder, pool, depths, num_gates = _skeleton(rng, max_inputs, max_size, with_constant=False)
    gates = []
    for _ in range(num_gates):
        fanin = int(rng.integers(1, max_fanin + 1))
        sources = _pick_sources(rng, pool, depths, max_depth, fanin)
        edges = [_literal(rng, s, is_input) for s, is_input in sources]
        threshold = int(rng.integers(0, len(edges) + 1))
        gate = builder.th(edges, threshold)
        depths[gate] = 1 + max(depths[s] for s, _ in sources)
        pool.append((gate, False))
        gates.append(gate)
    return builder.build(_outputs(rng, gates))


def random_ec(seed, max_inputs: int = 6, max_size: int = 8, max_depth: int = 3,
              max_fanin: int = 3, max_weight: int = 4) -> BoolCircuit:
    """Random equality circuit with weights in [-w, w]."""
    rng = _rng(seed)
    builder, pool, depths, num_gates = _skeleton(rng, max_inputs, max_size, with_constant=True)
    gates = []
    for _ in range(num_gates):
        fanin = int(rng.integers(1, max_fanin + 1))
        sources = _pick_sources(rng, pool, depths, max_depth, fanin)
        edges = [_literal(rng, s, is_input, int(rng.integers(-max_weight, max_weight + 1)))
                 for s, is_input in sources]
        gate = builder.et(edges)
        depths[gate] = 1 + max(depths[s] for s, _ in sources)
        pool.append((gate, False))
        gates.append(gate)
    return builder.build(_outputs(rng, gates), weight_bound=max_weight)


def random_wtc(seed, max_inputs: int = 6, max_size: int = 8, max_depth: int = 3,
               max_fanin: int = 3, max_weight: int = 4) -> BoolCircuit:
    """Random weighted threshold circuit with weights in [-w, w]."""
    rng = _rng(seed)
    builder, pool, depths, num_gates = _skeleton(rng, max_inputs, max_size, with_constant=False)
    gates = []
    for _ in range(num_gates):
        fanin = int(rng.integers(1, max_fanin + 1))
        sources = _pick_sources(rng, pool, depths, max_depth, fanin)
        edges = [_literal(rng, s, is_input, int(rng.integers(-max_weight, max_weight + 1)))
                 for s, is_input in sources]
        reach = max_weight * len(edges)
        gate = builder.wth(edges, int(rng.integers(-reach, reach + 1)))
        depths[gate] = 1 + max(depths[s] for s, _ in sources)
        pool.append((gate, False))
        gates.append(gate)
    return builder.build(_outputs(rng, gates), weight_bound=max_weight)


def random_nand(seed, max_inputs: int = 6, max_gates: int = 7, max_depth: int = 3,
                single_output: bool = True) -> BoolCircuit:
    """Random NAND circuit; the last gate is the output."""
    rng = _rng(seed)
    builder, pool, depths, num_gates = _skeleton(rng, max_inputs, max_gates, with_constant=False)
    gates = []
    for _ in range(num_gates):
        usable = [entry for entry in pool if depths[entry[0]] < max_depth]
        a, b = (usable[int(i)] for i in rng.integers(0, len(usable), size=2))
        gate = builder.nand(_literal(rng, *a), _literal(rng, *b))
        depths[gate] = 1 + max(depths[a[0]], depths[b[0]])
        pool.append((gate, False))
        gates.append(gate)
    outputs = [gates[-1]] if single_output else _outputs(rng, gates)
    return builder.build(outputs)


def random_circuit(kind: GateKind, seed: Optional[int] = None, **limits) -> BoolCircuit:
    generators = {
        GateKind.TH: random_tc,
        GateKind.ET: random_ec,
        GateKind.WTH: random_wtc,
        GateKind.NAND: random_nand,
    }
    return generators[kind](seed, **limits)
