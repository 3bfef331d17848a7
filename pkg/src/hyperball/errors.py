"""Exception hierarchy shared by all hyperball modules."""


class HyperballError(ValueError):
    """Base class for every error raised by the library."""


class InvalidPointError(HyperballError):
    """A point does not belong to the space it was used with."""


class SpaceMismatchError(HyperballError):
    """Objects from different ambient spaces were combined."""


class PreconditionError(HyperballError):
    """An operation was called outside its stated precondition."""


class UncertifiedChainError(HyperballError):
    """A chain prefix that has not been certified was passed where one is required."""


class OracleContractError(HyperballError):
    """A net oracle failed its covering contract on the declared sample."""


class DefinitionError(HyperballError):
    """A JSON definition document could not be parsed."""
