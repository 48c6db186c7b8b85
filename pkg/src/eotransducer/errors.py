"""Exception hierarchy shared across the package."""


class TransducerError(Exception):
    """Base class for all errors raised by eotransducer."""


class DomainError(TransducerError, ValueError):
    """An argument lies outside the domain of the requested function."""


class BranchError(TransducerError):
    """A channel formula was evaluated on the wrong side of the tau = 1 boundary."""


class ContractError(TransducerError):
    """A value object is internally inconsistent."""


class ConfigError(TransducerError):
    """A sweep configuration could not be parsed or validated."""


class NumericalError(TransducerError):
    """A numerical invariant failed or a linear system was singular."""
