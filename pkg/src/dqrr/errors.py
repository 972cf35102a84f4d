"""Exception hierarchy shared by all dqrr modules."""


class DqrrError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(DqrrError):
    """Invalid configuration: window mismatch, unknown series/suite name, bad caps."""


class ShapeMismatch(DqrrError):
    """Operands do not live in the same algebra/window/dimension."""


class ContractViolation(DqrrError):
    """A documented precondition of an operation was violated."""
