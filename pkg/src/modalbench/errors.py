"""Exception and warning types shared across the package."""

from __future__ import annotations


class InputError(ValueError):
    """Malformed or ineligible input: bad JSON, out-of-range worlds, failed prechecks."""


class CapExceededError(RuntimeError):
    """A request exceeded a configured resource cap and was refused, not attempted."""


class MissingVariableWarning(UserWarning):
    """A formula variable was absent from the valuation and treated as the empty set."""
