"""Exception hierarchy shared by every module."""


class CrossAlgError(Exception):
    """Base class for all library errors."""


class DivisionByZero(CrossAlgError, ZeroDivisionError):
    pass


class MixedScalarFields(CrossAlgError, TypeError):
    pass


class DimensionMismatch(CrossAlgError, ValueError):
    pass


class NoSolution(CrossAlgError):
    pass


class ZeroIndex(CrossAlgError, ValueError):
    pass


class WrongVariant(CrossAlgError, TypeError):
    """Operation needs a different kind of dynamical system."""


class ClosureExceedsWindow(CrossAlgError):
    """A Laurent product left the configured degree window."""


class NotInAlgebra(CrossAlgError, ValueError):
    pass


class NotUnital(CrossAlgError):
    pass


class NotFiniteDimensional(CrossAlgError):
    pass


class CharacterCountMismatch(CrossAlgError):
    pass


class NotAnAutomorphism(CrossAlgError):
    pass


class NotBijective(CrossAlgError, ValueError):
    pass


class ModulusMismatch(CrossAlgError, ValueError):
    pass


class NIsOdd(CrossAlgError, ValueError):
    pass


class SchemaError(CrossAlgError, ValueError):
    pass


class InternalInvariantViolation(CrossAlgError):
    """Two independent routes disagreed. Never silenced."""

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample
