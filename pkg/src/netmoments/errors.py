"""Exception types shared across the package."""


class DegeneracyError(ValueError):
    """Variance is zero (or numerically zero); studentization is undefined."""


class NotConnectedError(ValueError):
    """Motif adjacency does not describe a connected graph."""


class CostCapError(RuntimeError):
    """Operation would exceed its configured cost cap.

    Raised instead of silently running for hours; the cap can be raised
    through the corresponding keyword argument.
    """


class DegenerateReplicatesError(RuntimeError):
    """Too large a fraction of sampled replicates had zero variance."""

    def __init__(self, message: str, n_dropped: int, n_total: int):
        super().__init__(message)
        self.n_dropped = n_dropped
        self.n_total = n_total
