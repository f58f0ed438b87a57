"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid configuration or parameters (CLI exit code 2)."""


class BudgetError(RuntimeError):
    """A size or work budget was exceeded (CLI exit code 3)."""


class DyadicPrecisionError(OverflowError):
    """A dyadic operation would exceed the configured exponent limit."""
