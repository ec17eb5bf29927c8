"""
Configuration loader for the QNN toolkit.
Supports environment overlays and configuration validation.
"""

import json
import os
import logging
from pathlib import Path
from typing import Dict, Any, Optional
from dotenv import load_dotenv

from ..errors import ConfigError

logger = logging.getLogger("qnn_toolkit.config")

REQUIRED_SECTIONS = ["simulation", "dgate", "verification", "output", "environment"]


class ConfigLoader:
    """Loads and validates configuration from JSON files."""

    def __init__(self, config_file: str = "configs/config.json", environment: Optional[str] = None):
        """
        Initialize config loader.

        Args:
            config_file: Path to configuration file, relative to the current
                directory or the project root
            environment: Environment name selecting envs/.env.<environment>
        """
        self.config_file = config_file
        self.config: Dict[str, Any] = {}
        self.environment = environment or "local"
        self.base_path = Path(__file__).parent.parent.parent  # project root
        self._load_environment_config(explicit=environment is not None)
        self._load_config()
        self._validate_config()

    def _load_environment_config(self, explicit: bool):
        """Load envs/.env, then the environment-specific overlay."""
        main_env_path = self.base_path / "envs" / ".env"
        if main_env_path.exists():
            load_dotenv(main_env_path, override=False)
            logger.debug("Loaded main env config from %s", main_env_path)

        env_from_vars = os.getenv("QNN_TOOLKIT_ENVIRONMENT")
        if env_from_vars and not explicit:
            self.environment = env_from_vars
            logger.debug("Environment set to: %s", self.environment)

        env_file_path = self.base_path / "envs" / f".env.{self.environment}"
        if env_file_path.exists():
            load_dotenv(env_file_path, override=True)
            logger.debug("Loaded %s specific config from %s", self.environment, env_file_path)

    def _resolve(self) -> Path:
        candidate = Path(self.config_file)
        if candidate.is_absolute() or candidate.exists():
            return candidate
        return self.base_path / self.config_file

    def _load_config(self):
        """Load configuration from JSON file."""
        config_path = self._resolve()
        try:
            with open(config_path, "r", encoding="utf-8") as f:
                self.config = json.load(f)
            logger.debug("Loaded configuration from: %s", config_path)
        except FileNotFoundError:
            raise ConfigError(f"Configuration file {config_path} not found") from None
        except json.JSONDecodeError as e:
            raise ConfigError(f"Invalid JSON in configuration file {config_path}: {e}") from None

    def _validate_config(self):
        """Validate required configuration sections."""
        for section in REQUIRED_SECTIONS:
            if section not in self.config:
                raise ConfigError(f"Missing required configuration section: {section}")

    def get(self, key_path: str, default: Any = None) -> Any:
        """
        Get configuration value using dot notation.

        Args:
            key_path: Dot-separated path (e.g., "verification.concurrency.chunk_size")
            default: Default value if key not found

        Returns:
            Configuration value or default
        """
        keys = key_path.split(".")
        value = self.config

        try:
            for key in keys:
                value = value[key]
            return value
        except (KeyError, TypeError):
            return default

    def get_simulation_config(self) -> Dict[str, Any]:
        return self.config["simulation"]

    def get_dgate_config(self) -> Dict[str, Any]:
        """Parameters of the ode-mode D gate dynamics (delta, delta0, delta1, eps, time)."""
        return self.config["dgate"]

    def get_integration_options(self) -> Dict[str, Any]:
        return dict(self.get("simulation.integration", {}))

    def get_verification_config(self) -> Dict[str, Any]:
        return self.config["verification"]

    def get_output_config(self) -> Dict[str, Any]:
        return self.config["output"]

    def get_environment(self) -> str:
        """Get current environment."""
        return self.environment

    def is_debug_mode(self) -> bool:
        """Check if debug mode is enabled."""
        return bool(self.get("environment.debug", False))

    def get_log_level(self) -> str:
        return os.getenv("QNN_TOOLKIT_LOG_LEVEL") or self.get("environment.log_level", "INFO")

    def get_concurrency_limits(self) -> Dict[str, int]:
        """Get concurrency limits for verification."""
        return self.get("verification.concurrency", {
            "max_concurrent_chunks": 4,
            "chunk_size": 256,
        })

    def setup_logging(self):
        """Setup logging based on configuration."""
        debug = self.is_debug_mode()
        level = getattr(logging, str(self.get_log_level()).upper(), logging.INFO)

        format_str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s" if debug else "%(message)s"

        logging.basicConfig(
            level=level,
            format=format_str,
            handlers=[logging.StreamHandler()]
        )

        if debug:
            logger.debug("Debug mode enabled")
            logger.debug("Verification chunks: %s", self.get_concurrency_limits())

    def summary(self) -> str:
        """Configuration summary as text."""
        limits = self.get_concurrency_limits()
        lines = [
            "Configuration Summary:",
            f"  Environment: {self.get('environment.name', 'unknown')}",
            f"  D gate mode: {self.get('simulation.d_mode', 'ideal')}",
            f"  Verification: {self.get('verification.mode', 'exhaustive')}",
            f"  Debug Mode: {'enabled' if self.is_debug_mode() else 'disabled'}",
            "  Concurrency Limits:",
        ]
        lines += [f"    {key}: {value}" for key, value in limits.items()]
        return "\n".join(lines)


def load_config(config_file: str = "configs/config.json",
                environment: Optional[str] = None) -> ConfigLoader:
    """
    Load configuration from specified file.

    Args:
        config_file: Path to configuration file
        environment: Environment name

    Returns:
        ConfigLoader instance
    """
    return ConfigLoader(config_file=config_file, environment=environment)
