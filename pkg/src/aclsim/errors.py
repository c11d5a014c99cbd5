"""Exception types shared across the simulator."""


class ParameterError(ValueError):
    """A parameter or configuration value violates its documented range."""


class SignalError(ValueError):
    """A signal file or series is malformed, mislabeled, or has gaps."""
