"""Exception hierarchy shared by every module of the package."""


class MopError(Exception):
    """Base class for all errors raised by :mod:`multiop`."""


class BelowLattice(MopError):
    """Stepping down would leave the non-negative lattice."""


class DimensionMismatch(MopError):
    pass


class SingularMatrix(MopError):
    pass


class ParseError(MopError):
    pass


class RaggedTable(MopError):
    pass


class InvalidParameters(MopError):
    pass


class InsufficientDepth(MopError):
    def __init__(self, required, available):
        super().__init__(
            f"moment table too shallow: need degree {required}, have {available}"
        )
        self.required = required
        self.available = available


class NonNormalIndex(MopError):
    def __init__(self, index, detail=""):
        msg = f"multi-index {list(index)} is not normal"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.index = tuple(index)


class EmptyIndex(MopError):
    """Type I vectors do not exist for the zero multi-index (Q_0 = 0)."""


class NotBivariate(MopError):
    pass


class UnsupportedFamily(MopError):
    pass


class EvaluationPole(MopError):
    pass


class InconsistentField(MopError):
    def __init__(self, index, detail=""):
        msg = f"coefficient field is inconsistent at {list(index)}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.index = tuple(index)


class DomainError(MopError):
    pass
