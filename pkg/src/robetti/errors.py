"""Exception types shared across the package."""


class InternalConsistencyError(RuntimeError):
    """A mathematical invariant that must hold by construction was violated.

    Raised for negative barcode multiplicities, disagreeing computation
    routes, broken ladder commutativity and the like.  Seeing this error
    means a bug upstream, never bad user input.
    """


class FacetParseError(ValueError):
    """A facet file could not be parsed; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CofiltrationAuditError(ValueError):
    """A cofiltration file failed validation; carries the offending step."""

    def __init__(self, message: str, step: int | None = None):
        self.step = step
        if step is not None:
            message = f"step {step}: {message}"
        super().__init__(message)
