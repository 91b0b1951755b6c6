"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line front end:
2 for invalid input, 3 when a hypothesis of the asymptotic theory is
violated, 4 for numerical failures.
"""


class PCToeplitzError(Exception):
    exit_code = 4

    def __init__(self, message="", **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self):
        out = {"error": type(self).__name__, "message": self.message}
        for key, value in self.details.items():
            out[key] = value if isinstance(value, (int, float, str, bool, type(None))) else repr(value)
        return out


# -- invalid input ---------------------------------------------------------

class InvalidInput(PCToeplitzError, ValueError):
    exit_code = 2


class DimensionMismatch(InvalidInput):
    pass


class JumpPointEvaluation(InvalidInput):
    pass


class PoleOfBarnes(InvalidInput):
    pass


# -- hypotheses of the theory ----------------------------------------------

class HypothesisViolation(PCToeplitzError):
    exit_code = 3


class NotIRegular(HypothesisViolation):
    """I-regularity fails; ``condition`` is one of 'a', 'b', 'c'."""

    def __init__(self, message="", condition=None, theta=None, **details):
        super().__init__(message, condition=condition, theta=theta, **details)
        self.condition = condition
        self.theta = theta


class SingularValue(NotIRegular):
    def __init__(self, message="", theta=None, **details):
        super().__init__(message, condition="a", theta=theta, **details)


class BoundaryCase(NotIRegular):
    """A jump-ratio eigenvalue sits on (or within tolerance of) the closed
    negative real half-line, so some exponent has real part +-1/2."""

    def __init__(self, message="", theta=None, **details):
        super().__init__(message, condition="c", theta=theta, **details)


class IndexNonzero(HypothesisViolation):
    pass


# -- numerical failures ----------------------------------------------------

class NumericalFailure(PCToeplitzError):
    exit_code = 4


class BranchFailure(NumericalFailure):
    pass


class QuadratureNonConvergence(NumericalFailure):
    pass


class UnwindFailure(NumericalFailure):
    pass


class NonIntegerWinding(NumericalFailure):
    pass


class RouteMismatch(NumericalFailure):
    pass


class ResidualJump(NumericalFailure):
    pass


class SimilarityMismatch(NumericalFailure):
    pass


class SectionSingular(NumericalFailure):
    pass
