"""Exception types shared across the package."""


class GraphFormatError(ValueError):
    """Malformed graph text. Carries the 1-based line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DisconnectedGraphError(ValueError):
    """The graph (or its shadow) is not connected."""


class NoUnloopedVertexError(ValueError):
    """Every vertex carries a loop, so no valid root exists."""


class FactorizationError(RuntimeError):
    """An edge coloring or coordinatization is not a valid product structure."""


class OracleBoundError(ValueError):
    """Input exceeds the size bound of a brute-force oracle."""
