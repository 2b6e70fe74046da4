class ArcError(ValueError):
    """Base class for domain errors raised by arcop."""


class InvalidGraphError(ArcError):
    """The data does not describe a valid arc graph."""


class GlueError(ArcError):
    """Gluing or surgery produced inconsistent data (an internal invariant broke)."""


class UnsupportedCellError(ArcError, NotImplementedError):
    """The requested action is only implemented for tree-type cells."""


class EnumerationTooLarge(ArcError):
    """Refusal to run an enumeration whose size estimate exceeds the budget."""

    def __init__(self, estimate, limit):
        super().__init__(f"enumeration would visit about {estimate} candidates (limit {limit})")
        self.estimate = estimate
        self.limit = limit
