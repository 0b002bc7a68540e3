"""Exception hierarchy shared by all modules."""


class OrigamiError(Exception):
    """Base class for all library errors."""


class DegenerateEliminationError(OrigamiError):
    pass


class BadPrimeError(OrigamiError):
    def __init__(self, prime: int, reason: str):
        super().__init__(f"prime {prime} {reason}")
        self.prime = prime
        self.reason = reason


class GeometryError(OrigamiError):
    pass


class ChartError(GeometryError):
    """A line through the origin has no ``a*x + b*y + 1 = 0`` form."""


class NotAParabolaError(GeometryError):
    pass


class SharedComponentError(OrigamiError):
    pass


class PipelineError(OrigamiError):
    """Base for construction pipeline failures; ``details`` is JSON-friendly."""

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details


class NormalFormUnreachable(PipelineError):
    pass


class ZeroRootError(PipelineError):
    pass


class NoRealE(PipelineError):
    pass


class SolveFailed(PipelineError):
    pass


class DegenerateDenominator(PipelineError):
    pass


class SearchExhausted(PipelineError):
    pass


class DegenerateA(PipelineError):
    pass


class BranchSearchFailed(PipelineError):
    pass
