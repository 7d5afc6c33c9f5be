"""Exception types shared across the package."""


class CopgameError(Exception):
    """Base class for all errors raised by this package."""


class GraphConstructionError(CopgameError):
    """Invalid edge list or vertex data (out-of-range endpoint, loop, ...)."""


class Graph6ParseError(CopgameError):
    """Malformed graph6 record.

    Carries the byte offset of the offending byte when one can be named.
    """

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class ParameterError(CopgameError):
    """A parameter is outside its documented range (k=0, r=0, t<2, ...)."""


class ContractError(CopgameError):
    """A documented precondition does not hold (disconnected input, ...)."""


class BudgetExceededError(CopgameError):
    """A configurable search budget ran out before the search finished."""


class SimulationError(CopgameError):
    """A policy produced an illegal move during game simulation."""


class InternalInvariantError(CopgameError):
    """A state the underlying proofs rule out was reached; always a bug."""
