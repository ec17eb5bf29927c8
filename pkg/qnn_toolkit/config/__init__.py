"""
Configuration management for the QNN toolkit.
"""

from .route_config import RouteConfigLoader
from .config_loader import ConfigLoader, load_config

__all__ = ["RouteConfigLoader", "ConfigLoader", "load_config"]
