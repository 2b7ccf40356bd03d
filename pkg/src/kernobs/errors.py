class KernobsError(Exception):
    """Base class for errors raised by this package."""


class CapExceededError(KernobsError, ValueError):
    """An exhaustive routine was asked to run beyond its configured size cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class InvalidDecompositionError(KernobsError, ValueError):
    pass


class MalformedInstanceError(KernobsError, ValueError):
    pass


class KernelViolation(KernobsError):
    """A pluggable kernelization broke its size bound or changed the answer."""


class EnumerationBudgetError(KernobsError):
    pass
