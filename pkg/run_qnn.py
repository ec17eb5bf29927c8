"""
Simple QNN Toolkit Runner
Usage: python run_qnn.py
Compiles the three-NAND example to a QNN program, simulates every input and
checks the program against the source circuit.
"""
import sys

from qnn_toolkit import ec_to_qnn, run_verify_sync
from qnn_toolkit.circuits import all_assignments, nand_circuit_to_ec, truth_table
from qnn_toolkit.config import load_config
from qnn_toolkit.qnn import precision_plan, program_truth_table, quantize_program, three_nand_circuit
from qnn_toolkit.verification import CircuitArtifact, QnnArtifact


def run_example() -> bool:
    """Run the example with hardcoded parameters - modify these as needed"""

    # CONFIGURATION - Modify these parameters as needed
    d_mode = "ideal"                 # "ideal" or "ode"
    quantize = True                  # round every unitary to the required precision
    config_file = "configs/config.json"

    config = load_config(config_file)
    config.setup_logging()

    circuit = nand_circuit_to_ec(three_nand_circuit())
    program = ec_to_qnn(circuit)

    print("=" * 60)
    print(f"QNN TOOLKIT - three NAND example ({d_mode} D gates)")
    print("=" * 60)
    print(f"Qubits: {program.num_qubits}  Depth: {program.gate_depth}  Fan-in: {program.fanin}")
    for plan in precision_plan(program.d, program.fanin, program.weight_bound):
        print(f"  level {plan.level}: delta={plan.delta:.6g} eps={plan.eps:.6g} bits={plan.precision}")
    print("=" * 60)

    try:
        expected = truth_table(circuit)
        table = program_truth_table(program, d_mode=d_mode)
        for row, want, got in zip(all_assignments(circuit.num_inputs), expected[:, 0], table[:, 0]):
            bits = "".join(str(b) for b in row)
            print(f"  {bits} -> {got} (circuit {want})")

        left = CircuitArtifact(circuit, "three_nand")
        right = QnnArtifact(quantize_program(program) if quantize else program,
                            "three_nand.qnn", d_mode=d_mode)
        report = run_verify_sync(left, right, config=config)
        print("=" * 60)
        print("EQUIVALENT" if report.ok else f"MISMATCHES: {len(report.mismatches)}")
        print("=" * 60)
        return report.ok

    except Exception as e:
        print(f"ERROR: Run failed: {str(e)}")
        return False


def main():
    """Main entry point"""
    success = run_example()
    sys.exit(0 if success else 1)


if __name__ == "__main__":
    main()
