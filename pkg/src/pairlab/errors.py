"""Exception types shared across the package.

ValidationError covers bad inputs and violated preconditions; the CLI maps
it to exit code 2. Anything else escaping to the CLI is an internal error
(exit code 1).
"""


class PairlabError(Exception):
    pass


class ValidationError(PairlabError):
    """Rejected input: bad parameters, violated precondition, malformed file."""


class GenerationError(ValidationError):
    """A sequence rule produced values violating the sequence invariants."""


class TruncationWarning(UserWarning):
    """A real input was truncated to B fixed-point bits."""
