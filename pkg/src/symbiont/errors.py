"""Exception hierarchy shared across the engine."""


class SymbiontError(Exception):
    """Base class for all engine errors."""


class InputError(SymbiontError):
    """Malformed input data (files, schemas, literals).

    ``path`` is a JSON-pointer-ish location when the error originates from a
    document, e.g. ``$.values[3].coalition``.
    """

    def __init__(self, message: str, path: str | None = None):
        self.path = path
        super().__init__(message if path is None else f"{path}: {message}")


class InvalidCoalitionError(SymbiontError):
    """A coalition references agents outside the universe."""


class UniverseMismatchError(SymbiontError):
    """Two objects that must share a universe do not."""


class CapExceededError(SymbiontError):
    """An exhaustive (2^N-style) operation was asked for too many agents."""


class AllocationLengthError(SymbiontError):
    """A payoff vector does not match the universe size."""


class MalformedNetError(SymbiontError):
    """An MC-Net failed structural validation; carries the report."""

    def __init__(self, violations):
        self.violations = tuple(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"malformed MC-Net: {lines}")


class SuperadditivityError(SymbiontError):
    """Cost data produced a non-superadditive game; carries a witness pair."""

    def __init__(self, witness, message: str):
        self.witness = witness
        super().__init__(message)


class ExclusivityError(SymbiontError):
    """A policy's promoted coalitions overlap; carries the witness pair."""

    def __init__(self, witness, message: str):
        self.witness = witness
        super().__init__(message)
