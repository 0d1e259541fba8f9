"""Exception hierarchy.

Every error carries a ``category`` string so the CLI can print a single
machine-parseable line of the form ``error: <category>: <detail>``.
"""


class DriftError(Exception):
    category = "DriftError"

    def __init__(self, message: str = "", **details):
        super().__init__(message)
        self.details = details

    def __str__(self) -> str:
        msg = super().__str__()
        if not self.details:
            return msg
        extra = " ".join(f"{k}={v}" for k, v in self.details.items())
        return f"{msg} ({extra})" if msg else extra


# core_linalg
class ZeroVectorError(DriftError):
    category = "ZeroVector"


class WindowTooSmallError(DriftError):
    category = "WindowTooSmall"


class ZeroVarianceWindowError(DriftError):
    category = "ZeroVarianceWindow"


class NoConvergenceError(DriftError):
    category = "NoConvergence"


# metrics
class DimensionMismatchError(DriftError):
    category = "DimensionMismatch"


class NegativeIncrementError(DriftError):
    category = "NegativeIncrement"


# trajectory
class InvalidSpecError(DriftError):
    category = "InvalidSpec"


class TrajectoryTooShortError(DriftError):
    category = "TrajectoryTooShort"


# stats
class AllZeroError(DriftError):
    category = "AllZero"


# synth
class InvalidAngleError(DriftError):
    category = "InvalidAngle"


class IndexOutOfRangeError(DriftError):
    category = "IndexOutOfRange"


# io
class InputNotFoundError(DriftError):
    category = "FileNotFound"


class RaggedRowsError(DriftError):
    category = "RaggedRows"


class ParseError(DriftError):
    category = "ParseError"


class EmptyFileError(DriftError):
    category = "EmptyFile"


class NonFiniteDataError(DriftError):
    category = "NonFiniteData"


class IoError(DriftError):
    category = "IoError"
