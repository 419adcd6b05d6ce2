"""Exception types shared across the package."""


class ContractError(ValueError):
    """An input violates the documented precondition of an operation."""


class ConstructionError(RuntimeError):
    """The labeling construction reached a state its invariants forbid.

    These are internal failures; the pipeline may retry with a new seed.
    """
