"""Exception hierarchy.

Every precondition failure raised by the library derives from
:class:`GraphBellError` (itself a :class:`ValueError`), so callers can catch
one type. :class:`ResourceError` marks size caps that exist only to keep the
exhaustive or dense computations at desk scale.
"""


class GraphBellError(ValueError):
    """Base class for precondition failures."""


class DimensionError(GraphBellError):
    """Operands act on different numbers of qubits."""


class GraphParseError(GraphBellError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConstructionError(GraphBellError):
    """A Bell operator was requested with arguments violating its preconditions."""


class CompositionError(ConstructionError):
    def __init__(self, message, qubits=()):
        self.qubits = tuple(qubits)
        super().__init__(message)


class GuardError(GraphBellError):
    """A shortcut was requested on an input it is not valid for."""


class ResourceError(GraphBellError):
    """Problem size exceeds a configured cap."""
