"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: ConfigError -> 1, DataError -> 2,
plain OSError -> 3.
"""


class CiteHeatError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(CiteHeatError):
    """Invalid run configuration (bad flags, malformed config file)."""


class DataError(CiteHeatError):
    """Malformed or inconsistent input data."""
