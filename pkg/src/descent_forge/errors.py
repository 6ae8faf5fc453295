"""Exception types shared across the package."""


class DescentError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(DescentError, ValueError):
    pass


class AlgebraMismatch(DescentError, ValueError):
    """Operands live over different algebras."""


class NotInvertible(DescentError, ValueError):
    pass


class AxiomViolation(DescentError):
    """A constructed object failed its own axiom check (internal defect)."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = list(diagnostics or [])


class BudgetExceeded(DescentError):
    """An enumeration or memory guard fired."""

    def __init__(self, guard, requested, limit):
        super().__init__(f"{guard} budget exceeded: need {requested}, limit {limit}")
        self.guard = guard
        self.requested = requested
        self.limit = limit


class InvalidInstance(DescentError, ValueError):
    """Instance text failed to parse or validate; ``errors`` lists located problems."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))
