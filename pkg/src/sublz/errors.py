"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed input data (bad symbols, ragged string arrays, ...)."""


class ParameterError(ValueError):
    """Argument outside its documented domain."""


class QueryError(ValueError):
    """Query with no defined answer (empty range, select past last one, ...)."""


class ConfigurationError(ValueError):
    """Requested configuration exceeds a hard budget (table sizes, tau)."""


class NotFoundError(KeyError):
    """Pattern does not occur in the text."""


class ContractError(RuntimeError):
    """A documented precondition was violated by the caller."""


class ConstructionError(RuntimeError):
    """Internal consistency check failed while building a structure."""


class FormatError(ValueError):
    """Malformed serialized payload."""
