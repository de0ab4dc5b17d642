"""Exception types shared across the package."""


class ConfigError(Exception):
    """Raised when a run configuration or discretization is unusable."""
