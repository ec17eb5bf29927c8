"""
Exception hierarchy for the QNN toolkit.
"""

from typing import Optional


class QnnToolkitError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(QnnToolkitError):
    """Configuration file missing, unreadable or incomplete."""


class CircuitError(QnnToolkitError, ValueError):
    """Invalid circuit IR or a circuit pass precondition that does not hold."""


class DimensionError(QnnToolkitError, ValueError):
    """Matrix or state shapes that do not fit together."""


class CompileError(QnnToolkitError):
    """QNN compilation or decompilation failure."""


class IntegrationError(QnnToolkitError):
    """The amplitude ODE integrator could not meet its residual target."""


class ParseError(QnnToolkitError, ValueError):
    """Malformed input in one of the text formats."""

    def __init__(self, message: str, line: Optional[int] = None, path: Optional[str] = None):
        self.message = message
        self.line = line
        self.path = path
        super().__init__(self._render())

    def _render(self) -> str:
        where = self.path or "<input>"
        if self.line is not None:
            return f"{where}:{self.line}: {self.message}"
        return f"{where}: {self.message}"

    def with_path(self, path: str) -> "ParseError":
        """Return a copy of this error that names the file it came from."""
        return ParseError(self.message, line=self.line, path=path)
