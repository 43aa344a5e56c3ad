"""Exception hierarchy shared by every module of the package."""


class SurrealError(Exception):
    """Base class for domain errors (CLI exit code 2)."""


class InvalidCut(SurrealError, ValueError):
    """Some left element is not strictly below some right element."""


class NotAnOption(SurrealError, ValueError):
    pass


class EmptyCutViolation(SurrealError):
    """A genetic definition produced left values not all below its right values."""

    def __init__(self, message, left=None, right=None):
        super().__init__(message)
        self.left = left
        self.right = right


class UnknownBuiltin(SurrealError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown builtin"


class MemoOverflow(SurrealError):
    """A memo table reached its configured entry cap."""


class SideRequired(SurrealError, ValueError):
    """A polynomial option needs an endpoint that was not supplied."""


class NoRoot(SurrealError, ValueError):
    pass


class InconsistentCut(SurrealError):
    """Internal fault: constructed options failed to bracket the root."""


class DivisionByZero(SurrealError, ZeroDivisionError):
    pass


class NegativeRadicand(SurrealError, ValueError):
    pass


class NotFound(SurrealError, LookupError):
    pass


class CapTooSmall(SurrealError):
    """A closure computation escaped its cap before saturating."""

    def __init__(self, message, escapes=()):
        super().__init__(message)
        self.escapes = tuple(escapes)
