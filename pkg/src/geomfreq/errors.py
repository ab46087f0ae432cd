"""Exception types raised by the geometric frequency pipeline."""


class GeomFreqError(Exception):
    pass


class DimensionError(GeomFreqError, ValueError):
    """Operands live in spaces of different dimension."""


class RegularityError(GeomFreqError, ArithmeticError):
    """The curve speed s' vanishes, so the moving frame is undefined.

    ``t`` carries the offending instant when known.
    """

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class DegenerateCurveError(GeomFreqError, ValueError):
    """Generator parameters describe a curve that collapses to a line or point."""


class ComparabilityError(GeomFreqError, ValueError):
    """Frames at neighbouring instants have different sizes."""


class UnsupportedError(GeomFreqError, NotImplementedError):
    pass


class SignalFormatError(GeomFreqError, ValueError):
    """Malformed waveform file. ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SignalDataError(GeomFreqError, ValueError):
    pass
