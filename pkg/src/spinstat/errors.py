"""Exception types raised across the package."""


class SpinStatError(Exception):
    """Base class for every error raised by spinstat."""


class DimensionMismatch(SpinStatError, ValueError):
    pass


class NotNormalized(SpinStatError, ValueError):
    pass


class StructureViolation(SpinStatError, ValueError):
    """An operator failed the structural tag it was declared with."""


class NonFiniteEntries(SpinStatError, ArithmeticError):
    pass


class PhaseUndefined(SpinStatError, ValueError):
    """A relative phase was requested where the overlap/coherence vanishes."""


class BadAxis(SpinStatError, ValueError):
    pass


class NotScalar(SpinStatError, AssertionError):
    pass


class BadQuantumNumber(SpinStatError, ValueError):
    pass


class NonPositiveMass(SpinStatError, ValueError):
    pass


class UnexpectedNullity(SpinStatError, ArithmeticError):
    pass


class CovarianceViolation(SpinStatError, ArithmeticError):
    pass


class InconsistentModel(SpinStatError):
    """Raised (on request) when a toy field model fails the exchange closure."""


class TooFewSamples(SpinStatError, ValueError):
    pass


class EmptyInput(SpinStatError, ValueError):
    pass
