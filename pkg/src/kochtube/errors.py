"""Exception types shared across the package."""


class KochTubeError(Exception):
    """Base class; ``record()`` gives the machine-readable form the CLI prints."""

    kind = "error"

    def record(self) -> dict:
        return {"error": self.kind, "message": str(self)}


class DomainError(KochTubeError, ValueError):
    kind = "domain"


class ConfigurationError(KochTubeError, ValueError):
    kind = "configuration"


class AccuracyError(KochTubeError, ArithmeticError):
    """A numerical procedure could not reach its requested tolerance."""

    kind = "accuracy"

    def __init__(self, message: str, achieved: float = float("nan")):
        super().__init__(message)
        self.achieved = achieved

    def record(self) -> dict:
        rec = super().record()
        rec["achieved_tolerance"] = self.achieved
        return rec
