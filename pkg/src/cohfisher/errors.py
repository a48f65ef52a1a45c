"""Exception types raised by cohfisher."""


class CohFisherError(Exception):
    """Base class for all library errors."""


class ValidationError(CohFisherError, ValueError):
    """Invalid input profile, weights or separation."""


class DegenerateChannelError(CohFisherError):
    """A superposition channel has (numerically) vanishing norm."""


class IndeterminateDivergenceError(CohFisherError):
    """The eigenvalue term of the QFI is unbounded (vanishing eigenvalue with nonzero slope)."""


class ContractError(CohFisherError, TypeError):
    """An operation was called with a descriptor from the wrong model family."""


class ResolutionError(CohFisherError, ValueError):
    """The oracle grid does not resolve the profile."""


class UnreliableResultError(CohFisherError):
    """The oracle had to discard too much of the spectrum to be trusted."""


class ConvergenceError(CohFisherError):
    """The weight optimizer did not converge."""
