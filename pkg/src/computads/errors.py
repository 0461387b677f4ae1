"""Exception hierarchy shared by every module of the package."""


class ComputadError(Exception):
    """Base class for all errors raised by :mod:`computads`."""


class UnmappedLabel(ComputadError, KeyError):
    def __init__(self, label):
        super().__init__(label)
        self.label = label

    def __str__(self):
        return f"label {self.label!r} is outside the domain of the map"


class NonComposable(ComputadError):
    pass


class SearchBudgetExceeded(ComputadError):
    def __init__(self, what, needed, budget):
        super().__init__(f"{what}: {needed} candidate maps exceeds search budget {budget}")
        self.needed = needed
        self.budget = budget


class OracleBudgetExceeded(SearchBudgetExceeded):
    pass


class IncompatibleParallelPair(ComputadError):
    pass


class ConeConditionViolated(ComputadError):
    pass


class InternalInvariantViolation(ComputadError, AssertionError):
    """A construction produced something its own contract forbids (a library bug)."""


class ParseError(ComputadError, ValueError):
    def __init__(self, message, *, source="<string>", line=None):
        self.source = source
        self.line = line
        where = source if line is None else f"{source}:{line}"
        super().__init__(f"{where}: {message}")
