"""Errors raised by the sdof_lab domain modules."""


class SdofError(Exception):
    """Base class for every error raised by sdof_lab."""


class DomainError(SdofError, ValueError):
    """A parameter lies outside the domain of the operation."""


class AmbiguousAlignment(SdofError):
    """Two receiver dimensions coincide within rtol without being designed to."""


class GuardError(SdofError):
    """A resource guard tripped; the request is too large or ill-posed to run."""


class TooLarge(GuardError):
    pass


class Unbounded(GuardError):
    pass


class RejectionCapExceeded(GuardError):
    pass


class LeakageOverflow(GuardError):
    pass
