"""Exception hierarchy shared by every module of the toolkit."""


class StegoError(Exception):
    """Base class for all toolkit errors."""


# image_io
class PgmError(StegoError, ValueError):
    pass


class UnsupportedMagic(PgmError):
    pass


class BadMaxval(PgmError):
    pass


class TruncatedData(PgmError):
    pass


class MalformedHeader(PgmError):
    pass


# signification
class UnknownWeightFn(StegoError, KeyError):
    pass


class IncompletePartition(StegoError, ValueError):
    pass


# strategy
class ZeroBound(StegoError, ValueError):
    pass


class StrategyError(StegoError, ValueError):
    """Raised by strategy generation when ``P > N`` or ``lambda < P``."""


# di3
class WidthMismatch(StegoError, ValueError):
    pass


class PayloadTooLarge(StrategyError):
    pass


class LambdaTooSmall(StrategyError):
    pass


class GeometryMismatch(StegoError, ValueError):
    pass


# matrix_codes
class LengthMismatch(StegoError, ValueError):
    pass


class BadParameter(StegoError, ValueError):
    pass


class InsufficientCoefficients(StegoError, ValueError):
    pass


class NoSolutionWithinBudget(StegoError, ValueError):
    pass


# attacks
class BadPercentage(BadParameter):
    pass


class BadAngle(BadParameter):
    pass


class BadQuality(BadParameter):
    pass


# bench
class EmptyCorpus(StegoError, ValueError):
    pass


class EmptyInput(StegoError, ValueError):
    pass
