"""
Circuit-to-circuit compile routes.
Each route reads one circuit class and produces another.
"""

from typing import Dict, Any

from ..circuits.transforms import ec_to_tc, nand_circuit_to_ec, tc_to_ec, weighted_tc_to_tc


def _tc_to_ec(circuit, options: Dict[str, Any]):
    return tc_to_ec(circuit, options.get("variant") or "merged")


def _ec_to_tc(circuit, options: Dict[str, Any]):
    return ec_to_tc(circuit)


def _wtc_to_tc(circuit, options: Dict[str, Any]):
    return weighted_tc_to_tc(circuit)


def _nand_to_ec(circuit, options: Dict[str, Any]):
    return nand_circuit_to_ec(circuit)


def get_circuit_routes() -> Dict[str, Any]:
    """Get circuit routes configuration."""
    return {
        # threshold gates become equality checkers, depth d+1 (merged) or 2d (naive)
        "tc_to_ec": {
            "from": "tc",
            "to": "ec",
            "run": _tc_to_ec,
            "options": ["variant"],
        },

        # each ET gate becomes two WTH halves and an OR on top
        "ec_to_wtc": {
            "from": "ec",
            "to": "wtc",
            "run": _ec_to_tc,
            "options": [],
        },

        # weights realised by edge multiplicity, final weight bound 1
        "wtc_to_tc": {
            "from": "wtc",
            "to": "tc",
            "run": _wtc_to_tc,
            "options": [],
        },

        # NAND(a, b) = ET(a, b, 1:-2)
        "nand_to_ec": {
            "from": "nand",
            "to": "ec",
            "run": _nand_to_ec,
            "options": [],
        },
    }
