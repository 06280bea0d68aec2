"""Exception hierarchy.

The CLI maps the three top-level families onto exit codes: ``ParseError``
(2), ``DataInvariantError`` (3) and ``SolverRefusal`` (4).
"""


class RiskOptError(Exception):
    pass


class ParseError(RiskOptError, ValueError):
    """Malformed measure/contract/problem syntax or unreadable file."""


class DataInvariantError(RiskOptError, ValueError):
    """Input data violates a structural invariant."""


class NegativeProbability(DataInvariantError):
    pass


class ProbabilityMassMismatch(DataInvariantError):
    pass


class NonFiniteValue(DataInvariantError):
    pass


class InvalidLevel(DataInvariantError):
    pass


class NegativeScale(DataInvariantError):
    pass


class NegativeArgument(DataInvariantError):
    pass


class NotNonnegativeLoss(DataInvariantError):
    pass


class ParameterOutOfRange(DataInvariantError):
    pass


class InvalidDistortion(DataInvariantError):
    pass


class InvalidContract(DataInvariantError):
    pass


class InfeasibleMass(DataInvariantError):
    """No subset of atoms carries the requested probability mass."""


class SolverRefusal(RiskOptError):
    pass


class NonConvexMeasure(SolverRefusal):
    pass


class UnsupportedFamily(SolverRefusal):
    pass


class TooLarge(RiskOptError, ValueError):
    pass


class EmptyMenu(RiskOptError):
    pass


class PrecedenceNotVerified(RiskOptError):
    """rho >= psi failed on a tested distribution; the inclusion check is skipped."""


class NotConcave(RiskOptError, ValueError):
    pass


class NotAViolation(RiskOptError, ValueError):
    pass
