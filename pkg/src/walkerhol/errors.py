"""Exception hierarchy shared by all modules."""


class WalkerholError(Exception):
    """Base class for every error raised by this package."""


# exact arithmetic
class DivisionByZero(WalkerholError, ZeroDivisionError):
    pass


class UnknownVariable(WalkerholError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown variable"


class PoleAtPoint(WalkerholError, ValueError):
    pass


class ParseError(WalkerholError, ValueError):
    pass


class VariableMismatch(WalkerholError, ValueError):
    pass


# linear and Lie algebra
class ShapeMismatch(WalkerholError, ValueError):
    pass


class NotClosed(WalkerholError, ValueError):
    pass


class NotInSimN(WalkerholError, ValueError):
    pass


class NotWeaklyIrreducibleShape(WalkerholError, ValueError):
    pass


class InvalidSpec(WalkerholError, ValueError):
    pass


class UnknownAlgebra(WalkerholError, ValueError):
    pass


# curvature spaces
class NotWeakCurvature(WalkerholError, ValueError):
    pass


class ConstraintViolated(WalkerholError, ValueError):
    pass


class AlgebraTooSmall(WalkerholError, ValueError):
    pass


# geometry
class DegenerateMetric(WalkerholError, ValueError):
    pass


class NotWalker(WalkerholError, ValueError):
    pass


class NotStabilized(WalkerholError, RuntimeError):
    """Holonomy span did not stabilize within the order cap.

    ``partial`` carries the span reached so far.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NonRationalFrame(WalkerholError, ValueError):
    pass


class UnsupportedType(WalkerholError, ValueError):
    pass


class NotEinsteinFamily(WalkerholError, ValueError):
    pass


class OutOfScope(WalkerholError, ValueError):
    pass


class NotQuadraticInV(NotWalker):
    pass


class NotNormalForm(WalkerholError, ValueError):
    pass


class NotDim4(WalkerholError, ValueError):
    pass


class Mismatch(WalkerholError, AssertionError):
    """Computed object differs from the expected one.

    ``missing`` lists expected directions not found; ``extra`` the converse.
    """

    def __init__(self, message, missing=None, extra=None):
        super().__init__(message)
        self.missing = missing
        self.extra = extra
