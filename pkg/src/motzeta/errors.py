"""Exception hierarchy.

Every error carries an ``exit_code`` used by the CLI: 2 for bad input,
3 for a mathematical failure (no fit, not solvable, not Weil), 4 when a
resource cap is hit.
"""


class MotzetaError(Exception):
    exit_code = 2


class InputError(MotzetaError, ValueError):
    exit_code = 2


class MathFailure(MotzetaError):
    exit_code = 3


class ResourceCap(MotzetaError):
    exit_code = 4


# field_tower
class NotPrime(InputError):
    pass


class TooLarge(ResourceCap):
    pass


class DivisionByZero(MotzetaError, ZeroDivisionError):
    exit_code = 3


class FieldMismatch(InputError):
    pass


# varieties
class InhomogeneousProjective(InputError):
    pass


class UnknownVariable(InputError):
    pass


class BadReduction(InputError):
    pass


class SmallCharacteristic(InputError):
    pass


class NotTorsor(InputError):
    pass


class PolynomialSyntaxError(InputError):
    pass


# series_kernel
class NoFit(MathFailure):
    pass


class InsufficientTerms(InputError):
    pass


# motive_algebra
class ZeroConstantTerm(InputError):
    pass


class BaseMismatch(InputError):
    pass


class NotWeil(MathFailure):
    pass


# dirichlet_engine
class NotInvertible(MathFailure):
    pass


class BadLeadingCoefficient(InputError):
    pass


class CutoffMismatch(InputError):
    pass


# global_lfun
class NotSolvable(MathFailure):
    pass


class AdditiveReduction(InputError):
    pass


class MissingPlaces(InputError):
    pass


class NotMonomialRatio(MathFailure):
    pass


class PoleHit(MathFailure):
    pass


# cli / expression language
class ExprSyntaxError(InputError):
    def __init__(self, message, line, column):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class UnboundIdentifier(InputError):
    pass


class OutOfRegion(UserWarning):
    """Evaluation point outside the guaranteed region of absolute convergence."""
