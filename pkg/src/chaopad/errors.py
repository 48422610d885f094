"""Exception hierarchy shared by every chaopad module."""


class ChaopadError(Exception):
    """Base class; the CLI maps any subclass to exit status 1."""


class RangeError(ChaopadError, ValueError):
    """A key parameter lies outside its admissible interval."""


class DegenerateOrbit(ChaopadError, ArithmeticError):
    """A logistic iterate left the open interval (0, 1).

    ``step`` is the 1-based iteration at which the fault appeared (or None
    when unknown) and ``value`` is the offending iterate.
    """

    def __init__(self, value, step=None):
        self.value = value
        self.step = step
        where = f" at step {step}" if step is not None else ""
        super().__init__(f"logistic orbit degenerated to {value!r}{where}")


class NotPowerOfTwoSquare(ChaopadError, ValueError):
    pass


class SeedNotRandom(ChaopadError):
    """Seed validation failed while strict mode was on."""

    def __init__(self, report):
        self.report = report
        super().__init__("seed image failed monobit/serial validation")


class SeedImageMismatch(ChaopadError):
    pass


class LengthMismatch(ChaopadError, ValueError):
    pass


class BadDimensions(ChaopadError, ValueError):
    pass


class DimensionMismatch(ChaopadError, ValueError):
    pass


class TooShort(ChaopadError, ValueError):
    """Input sequence is below a test's minimum length."""

    def __init__(self, test, needed, got):
        self.test = test
        self.needed = needed
        self.got = got
        super().__init__(f"{test}: needs at least {needed} bits, got {got}")


class ZeroVariance(ChaopadError, ValueError):
    pass


class ImageTooSmall(ChaopadError, ValueError):
    pass


class MalformedHeader(ChaopadError, ValueError):
    pass


class UnsupportedMaxval(ChaopadError, ValueError):
    pass


class TruncatedData(ChaopadError, ValueError):
    pass


class ParseError(ChaopadError, ValueError):
    pass


class BadPadTrailer(ChaopadError, ValueError):
    pass
