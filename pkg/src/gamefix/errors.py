"""Exception hierarchy.

The CLI maps these onto exit codes: parse problems exit 1, domain problems
exit 2, non-convergence exits 3.
"""


class GameFixError(Exception):
    """Base class for every error raised by this package."""


class ParseError(GameFixError, ValueError):
    """Malformed input text. ``code`` is a stable machine-readable tag."""

    def __init__(self, message, line=None, code="syntax"):
        self.line = line
        self.code = code
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GameConstructionError(GameFixError, ValueError):
    """The payoff table does not describe a valid game."""


class MissingProfileError(GameConstructionError):
    def __init__(self, profile):
        self.profile = tuple(profile)
        super().__init__("missing profile " + " ".join(map(str, self.profile)))


class DuplicateProfileError(GameConstructionError):
    def __init__(self, profile):
        self.profile = tuple(profile)
        super().__init__("duplicate profile " + " ".join(map(str, self.profile)))


class DomainError(GameFixError, ValueError):
    """Inputs are well formed but outside an operation's domain."""


class ArityError(DomainError):
    pass


class NegativePayoffError(DomainError):
    pass


class DimensionError(DomainError):
    pass


class NotStochasticError(DomainError):
    pass


class DegenerateProjectorError(DomainError):
    pass


class ConvergenceError(GameFixError, RuntimeError):
    pass
