"""Exception types raised across the package."""


class NavtimeError(Exception):
    """Base class for all package errors."""


class UsageError(NavtimeError, ValueError):
    """Caller violated an operation's precondition (bad k, duplicate edge, ...)."""


class DataError(NavtimeError):
    """Input data could not be turned into a usable instance."""


class EdgeListParseError(DataError):
    def __init__(self, lineno: int, line: str, reason: str = "expected exactly 2 tokens"):
        self.lineno = lineno
        self.line = line
        super().__init__(f"line {lineno}: {reason}: {line!r}")


class EmptyGraphError(DataError):
    pass


class SamplingExhaustedError(DataError):
    pass


class StructuralError(DataError):
    """Some transient node cannot reach the absorbing set."""

    def __init__(self, node: int, label: str | None = None):
        self.node = node
        name = label if label is not None else str(node)
        super().__init__(f"node {name} cannot reach the target set; absorption time is infinite")


class CapTooLowError(NavtimeError):
    pass


class CombinationBoundError(UsageError):
    def __init__(self, count: int, bound: int):
        self.count = count
        self.bound = bound
        super().__init__(f"{count} combinations exceeds the enumeration bound of {bound}")
