"""
Route configuration loader: which compile routes the CLI may run.
"""

import json
import logging
import os
from typing import Dict, Any, List, Optional

logger = logging.getLogger("qnn_toolkit.config")


class RouteConfigLoader:
    """Loads and manages route configuration from JSON files."""

    def __init__(self, config_file: str = "configs/routes.json"):
        self.config_file = config_file
        self._config: Optional[Dict[str, Any]] = None

    def load_config(self) -> Dict[str, Any]:
        """Load route configuration from JSON file."""
        if self._config is not None:
            return self._config

        if not os.path.exists(self.config_file):
            logger.warning("Route config file not found: %s; all routes enabled", self.config_file)
            return self._get_default_config()

        try:
            with open(self.config_file, "r", encoding="utf-8") as f:
                self._config = json.load(f)
            logger.debug("Loaded route configuration from: %s", self.config_file)
            return self._config
        except (OSError, json.JSONDecodeError) as e:
            logger.warning("Failed to load route config (%s); all routes enabled", e)
            return self._get_default_config()

    def _enabled(self, section: str, route: str) -> bool:
        routes = self.load_config().get(section, {})
        return bool(routes.get(route, {}).get("enabled", False))

    def _enabled_names(self, section: str) -> List[str]:
        routes = self.load_config().get(section, {})
        return [name for name, route in routes.items() if route.get("enabled", False)]

    def is_circuit_route_enabled(self, route: str) -> bool:
        return self._enabled("circuit_routes", route)

    def is_qnn_route_enabled(self, route: str) -> bool:
        return self._enabled("qnn_routes", route)

    def get_enabled_circuit_routes(self) -> List[str]:
        return self._enabled_names("circuit_routes")

    def get_enabled_qnn_routes(self) -> List[str]:
        return self._enabled_names("qnn_routes")

    def is_route_enabled(self, route: str) -> bool:
        return self.is_circuit_route_enabled(route) or self.is_qnn_route_enabled(route)

    def _get_default_config(self) -> Dict[str, Any]:
        """Default configuration with all routes enabled."""
        return {
            "circuit_routes": {
                "tc_to_ec": {"enabled": True},
                "ec_to_wtc": {"enabled": True},
                "wtc_to_tc": {"enabled": True},
                "nand_to_ec": {"enabled": True},
            },
            "qnn_routes": {
                "ec_to_qnn": {"enabled": True},
                "qnn_to_ec": {"enabled": True},
            },
        }

    def get_config_summary(self) -> str:
        """Get a summary of the current configuration."""
        circuit = self.get_enabled_circuit_routes()
        qnn = self.get_enabled_qnn_routes()

        summary = "Route Configuration Summary:\n"
        summary += f"  Circuit routes enabled: {len(circuit)} ({', '.join(circuit)})\n"
        summary += f"  QNN routes enabled: {len(qnn)} ({', '.join(qnn)})"
        return summary
