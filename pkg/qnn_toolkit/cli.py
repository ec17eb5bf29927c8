"""
Command-line front end: compile, simulate, verify, dgate-plan, encode.

Exit status is 0 on success, 1 when verification finds a mismatch and 2 on
any input error. Every file written starts with a header recording the tool
version and the command line.
"""

import argparse
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .circuits.formats import circuit_from_dict, circuit_to_dict, format_circuit, parse_circuit
from .circuits.ir import BoolCircuit
from .circuits.transforms import TC_VARIANTS, BoundsReport
from .config import ConfigLoader, RouteConfigLoader
from .dynamics.dgate import DGateDynamics, default_eps, rate_components, trajectory_table
from .errors import QnnToolkitError
from .qnn.compiler import precision_plan
from .qnn.formats import format_program, parse_program, program_from_dict, program_to_dict
from .qnn.program import QnnProgram
from .qnn.runtime import simulate
from .quantum.encoder import EncoderOperator
from .quantum.formats import fmt_real, format_state, state_to_dict
from .quantum.state import encode_dense
from .routes import get_all_routes, plan_route
from .sync_entrypoints import run_verify_sync
from .verification import VERIFY_MODES, CircuitArtifact, QnnArtifact, load_artifact

logger = logging.getLogger("qnn_toolkit.cli")

CIRCUIT_KINDS = ("tc", "wtc", "ec", "nand")
EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


def _header(argv: Sequence[str]) -> str:
    return f"# qnn-toolkit {__version__} {' '.join(argv)}"


def _write(path: Optional[str], text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    Path(path).write_text(text, encoding="utf-8")


def _emit(path: Optional[str], argv: Sequence[str], body: str = "",
          payload: Optional[Dict[str, Any]] = None, indent: int = 2):
    if payload is not None:
        data = {"generator": f"qnn-toolkit {__version__}", "command": " ".join(argv)}
        data.update(payload)
        _write(path, json.dumps(data, indent=indent) + "\n")
    else:
        _write(path, _header(argv) + "\n" + body)


def _load_circuit(path: str) -> BoolCircuit:
    text = Path(path).read_text(encoding="utf-8")
    if path.endswith(".json"):
        data = json.loads(text)
        return circuit_from_dict(data.get("circuit", data))
    return parse_circuit(text, path)


def _load_program(path: str) -> QnnProgram:
    text = Path(path).read_text(encoding="utf-8")
    if path.endswith(".json"):
        data = json.loads(text)
        return program_from_dict(data.get("program", data))
    return parse_program(text, path)


def _resolve(config: ConfigLoader, path: str) -> str:
    candidate = Path(path)
    if candidate.exists() or candidate.is_absolute():
        return path
    return str(config.base_path / path)


def _dynamics(config: ConfigLoader) -> DGateDynamics:
    params = config.get_dgate_config()
    return DGateDynamics.plan(params.get("delta", 0.5), params.get("delta0", 0.25),
                              params.get("delta1", 0.75), params.get("eps"),
                              params.get("time", 1.0))


def _qnn_options(args, config: ConfigLoader) -> Dict[str, Any]:
    d_mode = args.d_mode or config.get_simulation_config().get("d_mode", "ideal")
    return {
        "d_mode": d_mode,
        "precision": args.precision,
        "dynamics": _dynamics(config) if d_mode == "ode" else None,
        "integration": config.get_integration_options(),
    }


def _report_text(reports: List[Dict[str, Any]]) -> str:
    lines = []
    for report in reports:
        lines.append(f"pass\t{report['pass']}")
        for key, value in report.items():
            if key in ("pass", "levels"):
                continue
            if isinstance(value, dict):
                lines += [f"{key}\t{k}\t{v}" for k, v in value.items()]
            else:
                lines.append(f"{key}\t{value}")
        for level in report.get("levels", []):
            lines.append("level\t" + "\t".join(f"{k}={v}" for k, v in level.items()))
    return "\n".join(lines) + "\n"


def _pass_report(name: str, before, after) -> Dict[str, Any]:
    if isinstance(before, BoolCircuit) and isinstance(after, BoolCircuit):
        return BoundsReport.compare(name, before, after).to_dict()
    if isinstance(after, QnnProgram):
        plan = []
        if after.weight_bound is not None:
            plan = [{"level": p.level, "delta": fmt_real(p.delta), "eps": fmt_real(p.eps),
                     "precision": p.precision}
                    for p in precision_plan(after.d, after.fanin, after.weight_bound)]
        return {"pass": name, "qubits": after.num_qubits, "depth": after.gate_depth,
                "fanin": after.fanin, "weight_bound": after.weight_bound, "levels": plan}
    return {"pass": name, "after": CircuitArtifact(after).bounds()}


def cmd_compile(args, config: ConfigLoader, routes: RouteConfigLoader, argv) -> int:
    enabled = routes.get_enabled_circuit_routes() + routes.get_enabled_qnn_routes()
    chain = plan_route(args.source_kind, args.target, enabled)
    artifact = _load_program(args.input) if args.source_kind == "qnn" else _load_circuit(args.input)
    options = {"variant": args.variant or config.get("compile.tc_variant", "merged"),
               "fanin": args.fanin or config.get("compile.fanin"),
               "output_index": args.output_index, "precision": args.precision}
    registry = get_all_routes()
    reports = []
    for name in chain:
        result = registry[name]["run"](artifact, options)
        reports.append(_pass_report(name, artifact, result))
        logger.info("compile: ran %s", name)
        artifact = result

    indent = config.get_output_config().get("json_indent", 2)
    if isinstance(artifact, QnnProgram):
        body, payload = format_program(artifact), {"program": program_to_dict(artifact)}
    else:
        body, payload = format_circuit(artifact), {"circuit": circuit_to_dict(artifact)}
    _emit(args.output, argv, body, payload if args.json else None, indent)
    if args.report:
        if args.json:
            _emit(args.report, argv, payload={"passes": reports}, indent=indent)
        else:
            _emit(args.report, argv, _report_text(reports))
    return EXIT_OK


def cmd_simulate(args, config: ConfigLoader, argv) -> int:
    program = _load_program(args.program)
    options = _qnn_options(args, config)
    seed = args.seed if args.seed is not None else config.get("simulation.seed", 0)
    collapse = args.collapse or bool(config.get("simulation.ancilla_collapse", False))
    result = simulate(program, args.input, options["d_mode"], options["precision"],
                      options["dynamics"], options["integration"], ancilla_collapse=collapse,
                      trace=args.trace, seed=seed)
    if args.json:
        payload = result.to_dict()
        payload["final_state"] = state_to_dict(result.final_state)
        _emit(None, argv, payload=payload, indent=config.get("output.json_indent", 2))
        return EXIT_OK

    digits = config.get("output.digits", 17)
    lines = [f"output\t{result.output}",
             f"measured\t{result.measured}\tp0={fmt_real(result.p_zero, digits)}"]
    for t in result.traces:
        checked = " ".join(f"{fmt_real(a.real, digits)}:{fmt_real(a.imag, digits)}"
                           for a in t.checked)
        lines.append(f"layer\t{t.level}\tchecked\t{checked}")
        lines.append(f"layer\t{t.level}\tlive\t{fmt_real(t.live_probability, digits)}"
                     f"\tsink\t{fmt_real(t.sink_prob, digits)}")
    _emit(None, argv, "\n".join(lines) + "\n" + format_state(result.final_state, digits))
    return EXIT_OK


def cmd_verify(args, config: ConfigLoader, argv) -> int:
    options = _qnn_options(args, config)
    settings = config.get_verification_config()
    mode = args.mode or settings.get("mode", "exhaustive")
    samples = args.samples or settings.get("samples", 256)
    seed = args.seed if args.seed is not None else settings.get("seed", 0)
    left = load_artifact(args.left, **options)
    right = load_artifact(args.right, **options)
    report = run_verify_sync(left, right, mode, samples, seed, config=config)

    if args.json:
        _emit(None, argv, payload=report.to_dict(), indent=config.get("output.json_indent", 2))
    else:
        _emit(None, argv, report.format_text())
    if args.report:
        _emit(args.report, argv, report.format_text())
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_dgate_plan(args, config: ConfigLoader, argv) -> int:
    eps = args.eps if args.eps is not None else default_eps(args.delta0, args.delta1)
    r0, r1 = rate_components(args.delta, args.delta0, args.delta1, eps, args.time)
    dyn = DGateDynamics.plan(args.delta, args.delta0, args.delta1, eps, args.time)
    a0 = args.a0 if args.a0 is not None else args.delta0
    digits = config.get("output.digits", 17)
    lines = [f"# R0={fmt_real(r0, digits)} R1={fmt_real(r1, digits)} R={fmt_real(dyn.rate, digits)}"
             f" eps={fmt_real(eps, digits)} a0={fmt_real(a0, digits)}",
             "t,|a|,implicit_lhs,exp(-Rt)"]
    for t, mag, lhs, decay in trajectory_table(a0, dyn, args.points):
        lhs_text = "" if lhs is None else fmt_real(lhs, digits)
        lines.append(f"{fmt_real(t, digits)},{fmt_real(mag, digits)},{lhs_text},"
                     f"{fmt_real(decay, digits)}")
    _emit(args.output, argv, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_encode(args, config: ConfigLoader, argv) -> int:
    bits = [int(c) for c in args.bits if c in "01"]
    if len(bits) != len(args.bits):
        raise ValueError(f"bit string may only contain 0 and 1, got {args.bits!r}")
    dense = encode_dense(bits, 1.0 / math.sqrt(len(bits)))
    encoded = EncoderOperator(len(bits)).encode(bits)
    if args.json:
        _emit(None, argv, payload={"dense": state_to_dict(dense), "encoder": state_to_dict(encoded)},
              indent=config.get("output.json_indent", 2))
        return EXIT_OK
    digits = config.get("output.digits", 17)
    _emit(None, argv, "# dense\n" + format_state(dense, digits)
          + "# encoder (qubit 0 is z)\n" + format_state(encoded, digits))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qnn-toolkit",
                                     description="Compile, simulate and verify QNN programs")
    parser.add_argument("--config", default="configs/config.json", help="System configuration file")
    parser.add_argument("--routes", default="configs/routes.json", help="Route configuration file")
    parser.add_argument("--version", action="version", version=f"qnn-toolkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="Convert between circuit classes and QNN programs")
    p.add_argument("--from", dest="source_kind", required=True, choices=CIRCUIT_KINDS + ("qnn",))
    p.add_argument("--to", dest="target", required=True, choices=("ec", "wtc", "tc", "qnn"),
                   help="Target kind; wtc keeps the weighted threshold gates, tc has unit weights")
    p.add_argument("input")
    p.add_argument("-o", "--output", default=None, help="Output file (stdout when omitted)")
    p.add_argument("--report", default=None, help="Write per-pass bounds to this file")
    p.add_argument("--variant", choices=TC_VARIANTS, default=None)
    p.add_argument("--fanin", type=int, default=None)
    p.add_argument("--output-index", type=int, default=None)
    p.add_argument("--precision", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("simulate", help="Run a QNN program on one input")
    p.add_argument("program")
    p.add_argument("--input", required=True, help="Input bits, x1 first")
    p.add_argument("--d-mode", choices=("ideal", "ode"), default=None)
    p.add_argument("--precision", type=int, default=None)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--collapse", action="store_true", help="Ancilla collapse after each D gate")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="Check two circuits or programs for equivalence")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--mode", choices=VERIFY_MODES, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--d-mode", choices=("ideal", "ode"), default=None)
    p.add_argument("--precision", type=int, default=None)
    p.add_argument("--report", default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("dgate-plan", help="Convergence rate and trajectory of the D gate ODE")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--delta0", type=float, required=True)
    p.add_argument("--delta1", type=float, required=True)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--time", type=float, required=True)
    p.add_argument("--a0", type=float, default=None, help="Start magnitude (default delta0)")
    p.add_argument("--points", type=int, default=11)
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("encode", help="Dense and encoder-operator encodings of a bit string")
    p.add_argument("bits")
    p.add_argument("--json", action="store_true")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT

    try:
        config = ConfigLoader(config_file=args.config)
        config.setup_logging()
        routes = RouteConfigLoader(_resolve(config, args.routes))
        if args.command == "compile":
            return cmd_compile(args, config, routes, argv)
        if args.command == "simulate":
            return cmd_simulate(args, config, argv)
        if args.command == "verify":
            return cmd_verify(args, config, argv)
        if args.command == "dgate-plan":
            return cmd_dgate_plan(args, config, argv)
        return cmd_encode(args, config, argv)
    except (QnnToolkitError, ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        logger.error("%s", exc)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
