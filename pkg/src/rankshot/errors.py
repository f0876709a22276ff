"""Exception types shared across the package."""


class ConfigError(Exception):
    """A configuration document is malformed or internally inconsistent."""


class GuardError(Exception):
    """An exhaustive operation would exceed its enumeration guard."""
