"""
QNN Toolkit
Compiles threshold and exact-threshold circuits into quantum neural network
programs, simulates them with ideal or ODE-driven D gates, and checks
artifacts for equivalence.
"""
__version__ = "1.0.0"
__author__ = "QNN Toolkit"
from .errors import QnnToolkitError, ConfigError, CircuitError, CompileError, ParseError
from .qnn import QnnProgram, ec_to_qnn, qnn_to_ec, simulate
from .verification import VerificationRunner, VerifyReport, load_artifact
from .sync_entrypoints import run_verify_sync

__all__ = [
    "QnnToolkitError", "ConfigError", "CircuitError", "CompileError", "ParseError",
    "QnnProgram", "ec_to_qnn", "qnn_to_ec", "simulate",
    "VerificationRunner", "VerifyReport", "load_artifact", "run_verify_sync",
]
