"""Exception hierarchy shared by every module in the package."""


class StateError(ValueError):
    """Input does not describe a valid quantum object."""


class NotHermitian(StateError):
    pass


class NotUnitTrace(StateError):
    pass


class NotPSD(StateError):
    pass


class NotNormalized(StateError):
    pass


class NotUnitary(StateError):
    pass


class BadDimension(StateError):
    pass


class OutOfRange(StateError):
    pass


class NoConvergence(RuntimeError):
    """An optimizer could not confirm its result.

    The best value found so far is never discarded: it travels with the
    exception in ``result`` so callers can inspect or accept it.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class NotFound(RuntimeError):
    """A randomized search exhausted its attempt budget."""
