"""Exception types shared across the package.

Two failure families matter to callers (and map to CLI exit codes):
invalid inputs or configuration, and numerically degenerate situations
that arise from otherwise well-formed inputs.
"""


class ResonlabError(Exception):
    """Base class for all package errors."""


class ValidationError(ResonlabError, ValueError):
    """Bad input: domain violations, malformed configs, shape mismatches."""


class NumericalError(ResonlabError, RuntimeError):
    """Well-formed input hit a numerical degeneracy (zero denominator,
    reading a non-diagonal state, resolution guard, ...)."""
