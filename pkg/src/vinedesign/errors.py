"""Exception types shared across the toolkit."""


class VineDesignError(Exception):
    """Base class for all vinedesign errors."""


class DimensionError(VineDesignError, ValueError):
    """Mismatched vector/sequence dimensions (e.g. design vs. configuration)."""


class DegenerateGeometryError(VineDesignError, ValueError):
    """A zero-length segment where a finite link was required."""


class InvalidTargetError(VineDesignError, ValueError):
    """A target that violates its invariants (e.g. placed at the base)."""


class ContractError(VineDesignError, ValueError):
    """A call that violates an operation's preconditions."""


class OptimizerFailureError(VineDesignError, RuntimeError):
    """The stochastic search could not produce any usable sample."""


class ValidationError(VineDesignError, ValueError):
    """A problem or solution document failed schema validation.

    ``field`` carries a dotted path to the offending entry, e.g.
    ``targets[2].phiDegrees``.
    """

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        super().__init__(message if field is None else f"{field}: {message}")
