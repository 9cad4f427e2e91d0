"""
Exception types raised across the character variety engine
"""


class CharVarError(Exception):
    """Base class for all engine errors"""


class MissingBinding(CharVarError, KeyError):
    """Evaluation hit a variable with no assigned value"""

    def __init__(self, variable):
        self.variable = variable
        super().__init__(f"No value bound for variable {variable}")

    def __str__(self):
        return self.args[0]


class ParseError(CharVarError, ValueError):
    """Text could not be parsed as a polynomial, word or matrix"""


class RankUnsupported(CharVarError, ValueError):
    pass


class RankMismatch(CharVarError, ValueError):
    pass


class NotUnimodular(CharVarError, ValueError):
    """Matrix determinant is not 1 (exactly, or within tolerance)"""


class BlockNotUnimodular(CharVarError, ValueError):
    pass


class ZeroParameter(CharVarError, ValueError):
    pass


class SingularBlock(CharVarError, ValueError):
    pass


class UnknownIdentity(CharVarError, KeyError):
    def __str__(self):
        return self.args[0] if self.args else "unknown identity"


class ArityMismatch(CharVarError, ValueError):
    pass


class ReductionFailed(CharVarError):
    """A trace word could not be reduced to the nine generators"""


class BasisInsufficient(ReductionFailed):
    def __init__(self, degree_bound: int, message: str = ""):
        self.degree_bound = degree_bound
        super().__init__(message or f"No solution with degree bound {degree_bound}")


class RankDeficient(ReductionFailed):
    pass


class VariableOutOfSubring(CharVarError, ValueError):
    pass


class InvalidBoundary(CharVarError, ValueError):
    pass


class RootFindingFailure(CharVarError, ArithmeticError):
    pass


class DomainError(CharVarError, ValueError):
    pass


class FixtureMismatch(CharVarError):
    """Replayed output differs from the recorded fixture"""

    def __init__(self, message: str, diff: str = ""):
        self.diff = diff
        super().__init__(message)
