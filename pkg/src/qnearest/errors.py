"""Exception types shared across the package."""


class SimulatorError(Exception):
    """Base class for every error this package raises on purpose."""


class InvalidInputError(SimulatorError, ValueError):
    """A caller-supplied value violates an operation's contract."""


class NormDriftError(SimulatorError):
    """State norm drifted beyond tolerance.

    Indicates a kernel or gate bug, not bad input; states are never
    silently renormalized.
    """


class CapacityError(SimulatorError):
    """The requested state exceeds the configured amplitude cap."""
