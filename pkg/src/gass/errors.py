"""Exception types raised across the package."""


class GeometryError(ValueError):
    """Physically inconsistent geometry (degenerate cap, beam misses the shell)."""


class ConfigError(ValueError):
    """Invalid configuration value. ``key`` names the offending field."""

    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key


class QuadratureError(ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message, estimate, error):
        super().__init__(f"{message} (estimate={estimate!r}, error={error!r})")
        self.estimate = estimate
        self.error = error


class ConsistencyError(ArithmeticError):
    """A computed probability left [0, 1]; indicates a formula bug."""
