"""Exception hierarchy.

Precondition failures derive from :class:`PreconditionError` so callers (the
CLI in particular) can tell "the input violates a standing hypothesis" apart
from numerical trouble.
"""


class TransradError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(TransradError, ValueError):
    """Input violates a hypothesis the requested computation needs."""


class InvalidMatrix(PreconditionError):
    pass


class DimensionMismatch(PreconditionError):
    pass


class NotHermitian(PreconditionError):
    pass


class NotSelfadjoint(PreconditionError):
    pass


class KernelVector(PreconditionError):
    """``f`` is (numerically) annihilated by ``A``."""


class NumericalRangeZero(PreconditionError):
    """Zero lies in the numerical range of ``A`` up to tolerance."""


class SingularDirection(PreconditionError):
    """The direction operator ``A`` is not invertible."""


class UnsupportedDimension(PreconditionError):
    pass


class HypothesisViolated(PreconditionError):
    pass


class DegenerateMaximizer(PreconditionError):
    pass


class DegenerateStationary(PreconditionError):
    pass


class StateOutsideP(PreconditionError):
    """The state gives ``A*A`` (numerically) zero weight."""


class NotAState(PreconditionError):
    pass


class NumericalFailure(TransradError, ArithmeticError):
    pass


class NonConvergence(NumericalFailure):
    pass


class CertificateNotFound(NumericalFailure):
    pass
