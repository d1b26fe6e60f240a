"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: usage/domain problems exit 2, resource
limits exit 3, numerical failures exit 4.
"""


class UsageError(ValueError):
    """Arguments outside an operation's documented domain."""


class ResourceLimitError(RuntimeError):
    """The request is valid but priced beyond the configured budget."""


class NumericalError(ArithmeticError):
    """A numerical procedure failed to converge or lost its error bound."""
