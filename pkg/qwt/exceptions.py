"""Errors raised by the quantum wavelet transform library."""


class QwtError(Exception):
    """Base class for every library error."""


class UnknownFilterError(QwtError):
    def __init__(self, name, available):
        self.name = name
        self.available = tuple(available)
        super().__init__(
            f"Unknown filter '{name}'. Available: {', '.join(self.available)}"
        )


class FilterValidationError(QwtError):
    """A coefficient sequence failed the orthogonal wavelet conditions."""

    def __init__(self, report, source=None):
        self.report = report
        self.source = source
        where = f" ({source})" if source else ""
        super().__init__(f"Filter validation failed{where}: {report.summary()}")


class FactorizationError(QwtError):
    pass


class DimensionError(QwtError):
    pass


class DepthError(QwtError):
    pass


class IndexRangeError(QwtError):
    pass


class LayoutError(QwtError):
    pass


class WidthError(QwtError):
    pass


class InsufficientQubitsError(QwtError):
    pass


class ConstantRangeError(QwtError):
    pass


class LoweringError(QwtError):
    pass


class DegenerateProjectionError(QwtError):
    pass


class SignalError(QwtError):
    """Signal file has the wrong length or is not normalized."""
