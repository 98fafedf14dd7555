"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or inconsistent input data."""


class PreconditionError(ValueError):
    """Input is well formed but violates an operation's precondition."""


class NotNilpotentError(PreconditionError):
    pass


class NotCommutingError(PreconditionError):
    pass


class NotCompatibleError(PreconditionError):
    pass


class StrictnessError(AssertionError):
    """A morphism of mixed twistors failed f(W_l) = Im f & W_l."""
