"""Exception hierarchy shared by every module."""


class ExtOrderError(Exception):
    """Base class for all library errors."""


class ValidationError(ExtOrderError):
    """Input failed construction-time validation (bad ids, axiom violations, schema)."""


class UndefinedInputError(ExtOrderError):
    """An operation was asked for a value outside its domain of definition."""


class OverlapError(ExtOrderError):
    """Deletion and contraction sets intersect."""


class NotIndependentError(ExtOrderError):
    pass


class NotFeasibleError(ExtOrderError):
    pass


class EmptyPassiveError(ExtOrderError):
    """The independent set is the minimum of the external order; nothing lies below it."""


class NotJoinDistributiveError(ExtOrderError):
    pass


class NotMatroidalError(ExtOrderError):
    pass


class InternalConsistencyError(ExtOrderError):
    """Two independent computations of the same object disagreed. Always a bug."""
