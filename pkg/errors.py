from settings import EXIT_USAGE, EXIT_EVALUATION


class TsFracError(Exception):
    """
    Base class of every error raised by tsfrac.

    :var exit_code: Process exit code the command line maps this error to
    """

    exit_code = EXIT_EVALUATION


class UsageError(TsFracError):
    """Malformed input: text that does not parse, or parameters outside their range."""

    exit_code = EXIT_USAGE


class EvaluationError(TsFracError):
    """Well-formed input on which an operator is undefined or fails."""

    exit_code = EXIT_EVALUATION


# Usage errors
class ScaleSyntaxError(UsageError):
    pass


class ExprSyntaxError(UsageError):
    """
    Expression text that does not parse.

    :var offset: Byte offset into the source text where parsing failed
    """

    def __init__(self, message, offset):
        super().__init__(f'{message} (at byte {offset})')
        self.offset = offset


class UnknownIdentifier(ExprSyntaxError):
    pass


class InvalidAlpha(UsageError):
    pass


class InvalidExponent(UsageError):
    pass


class EmptyRange(UsageError):
    pass


# Evaluation errors
class PointNotInScale(EvaluationError):
    pass


class PointNotInKappa(PointNotInScale):
    """The point is a left-scattered maximum, where no derivative is defined."""


class DomainError(EvaluationError):
    pass


class NotDifferentiable(EvaluationError):
    pass


class NegativePointWithFractionalAlpha(EvaluationError):
    pass


class NonpositivePointWithFractionalAlpha(EvaluationError):
    pass


class ZeroLimitUndetermined(EvaluationError):
    pass


class QuadratureFailure(EvaluationError):
    pass


class NotMonotone(EvaluationError):
    pass


class ImageNotRepresentable(EvaluationError):
    pass


class FunctionVanishes(EvaluationError):
    pass


class ZeroWeightMass(EvaluationError):
    pass


class NegativeWeight(EvaluationError):
    pass


class ShapeIndeterminate(EvaluationError):
    pass
