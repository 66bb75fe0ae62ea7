"""Exception types shared by the whole package."""


class DoobError(Exception):
    """Base class for every error raised by :mod:`doobcolor`."""


class InvalidVertex(DoobError, ValueError):
    pass


class DeskScaleExceeded(DoobError):
    """Raised when an operation would need more than the exhaustive budget.

    ``spec`` is the graph the caller asked for (or the one that would have
    been built), so the caller can retry in sampled mode.
    """

    def __init__(self, message, spec=None):
        super().__init__(message)
        self.spec = spec


class NotEquitable(DoobError):
    """A vertex whose per-color neighbour counts disagree with its class."""

    def __init__(self, vertex, color, expected_row, observed_row):
        self.vertex = int(vertex)
        self.color = int(color)
        self.expected_row = [int(v) for v in expected_row]
        self.observed_row = [int(v) for v in observed_row]
        super().__init__(
            f"vertex {self.vertex} (color {self.color}) sees {self.observed_row}, "
            f"expected {self.expected_row}"
        )


class WrongColorCount(DoobError):
    pass


class SingletonCode(DoobError):
    pass


class NotCompletelyRegular(DoobError):
    def __init__(self, message, vertex=None):
        super().__init__(message)
        self.vertex = vertex


class UnsupportedSpec(DoobError):
    pass


class BlockStructureMismatch(DoobError):
    pass


class ConditionViolated(DoobError):
    """A hypothesis of a composition rule fails; ``item`` names which one."""

    def __init__(self, message, item=None):
        super().__init__(message)
        self.item = item


class NotAdmissible(DoobError):
    pass


class VerificationError(DoobError):
    """A builder produced an object that failed its own verification."""


class Unsatisfiable(DoobError):
    """The search space was exhausted without a solution."""


class BudgetExhausted(DoobError):
    """The search stopped on its node or time limit before finishing."""

    def __init__(self, message, nodes=0):
        super().__init__(message)
        self.nodes = nodes


class NotFound(DoobError):
    """A restricted (ansatz) search found nothing; says nothing about existence."""


class FormatError(DoobError, ValueError):
    pass
