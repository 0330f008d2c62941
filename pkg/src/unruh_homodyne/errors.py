"""Exception hierarchy shared by all modules."""


class ChannelError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ChannelError, ValueError):
    """Input outside the mathematical domain of an operation."""


class RangeOverflowError(ChannelError, OverflowError):
    """A result would exceed the largest finite double."""


class EvaluationError(ChannelError):
    """An integrand returned a non-finite value.

    Attributes:
        abscissa: the offending evaluation point.
    """

    def __init__(self, message, abscissa=None):
        super().__init__(message)
        self.abscissa = abscissa


class ConvergenceError(ChannelError):
    """Quadrature tolerance not met within the panel budget.

    Attributes:
        result: best QuadratureResult obtained before giving up.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class DegenerateChannelError(ChannelError):
    """The local-oscillator strength underflowed; ratios are meaningless."""


class ResolutionError(ChannelError):
    """Oracle grid too coarse: internal refinement check failed."""


class OptimizationError(ChannelError):
    """Too many metric evaluations failed during a scan."""


class UsageError(ChannelError):
    """Invalid command-line or run-spec input."""


class SchemaError(ChannelError):
    """A CSV input does not match the standard sweep schema.

    Attributes:
        column: name of the offending column, when identifiable.
    """

    def __init__(self, message, column=None):
        super().__init__(message)
        self.column = column
