"""Exception hierarchy shared by every module."""


class GridReconError(Exception):
    """Base class for all library errors."""


class InvalidGroupError(GridReconError, ValueError):
    pass


class InvalidElementError(GridReconError, ValueError):
    pass


class NotGeneratingError(GridReconError):
    """Raised when a candidate set fails to generate a group modulo a subgroup."""


class NotInSpanError(GridReconError):
    pass


class ContextMismatchError(GridReconError, ValueError):
    pass


class NotAUnitError(GridReconError, ValueError):
    pass


class NotRationalError(GridReconError):
    pass


class OrderExceededError(GridReconError):
    """A moment query asked for a higher order than the oracle permits."""


class ContradictionError(GridReconError):
    """A quantity that must be nonzero on the support vanished."""


class RootRecoveryError(GridReconError):
    """No root was verified before the precision schedule ran out."""


class InternalInconsistencyError(GridReconError):
    """Moment data disagree with what the algebra guarantees."""


class InvalidParameterError(GridReconError, ValueError):
    pass


class BudgetExceededError(GridReconError):
    pass
