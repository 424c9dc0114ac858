"""Exception types raised by matmeans."""


class MatmeansError(Exception):
    """Base class for all library errors."""


class NonConvergence(MatmeansError, ArithmeticError):
    """An iterative solver did not reach its stopping criterion."""


class DomainViolation(MatmeansError, ValueError):
    """A spectrum or parameter lies outside the admissible interval."""

    def __init__(self, message, value=None, domain=None):
        super().__init__(message)
        self.value = value
        self.domain = domain


class DimensionMismatch(MatmeansError, ValueError):
    """Operands have incompatible shapes."""


class SingularInput(MatmeansError, ValueError):
    """An operation requiring an invertible matrix received a singular one."""


class NotUnital(MatmeansError, ValueError):
    """A unital positive map was required."""


class OptimizerFailure(MatmeansError, ArithmeticError):
    """Restarts of a numerical optimizer disagree beyond tolerance."""


class ConfigError(MatmeansError, ValueError):
    """Unknown identifier or out-of-range knob in a verification config."""
