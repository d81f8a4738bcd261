"""
Name: errors.py
Description: Error hierarchy shared by every trendlab module.
Author: Connor Kasarda
Date: 2025-05-02

Notes:
    Every error raised on purpose derives from TrendLabError and falls into one of three categories.
    The command line maps each category to an exit code: ConfigError -> 1, DataError -> 2, NumericError -> 3.

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

class TrendLabError(Exception):
    """
    Base class for all trendlab errors.
    """

class ConfigError(TrendLabError):
    """
    A configuration value or a call precondition is invalid.
    """

class DataError(TrendLabError):
    """
    Input data violates a format rule or a domain invariant.
    """

class NumericError(TrendLabError):
    """
    A computation produced non-finite values or failed to converge.
    """

class LineError(DataError):
    """
    A data error tied to one line of an input file.

    Attributes:
        path (str): The offending file.
        line_number (int): 1-based line number, the header being line 1.
        reason (str): What is wrong with the line.
    """

    def __init__(self, path: str, line_number: int, reason: str) -> None:
        """
        Initializes the LineError instance.

        Args:
            path (str): The offending file.
            line_number (int): 1-based line number.
            reason (str): What is wrong with the line.
        """

        super().__init__(f'{path}, line {line_number}: {reason}')
        self.path = str(path)
        self.line_number = line_number
        self.reason = reason

# File format errors
class MissingHeader(LineError):
    pass

class RaggedRow(LineError):
    pass

class DuplicateTimeIndex(LineError):
    pass

class NonFiniteValue(LineError):
    pass

class NonPositiveTime(LineError):
    pass

class BadEventFlag(LineError):
    pass

class MalformedLine(LineError):
    pass

class UndecodableLine(LineError):
    pass

# File access errors
class UnreadableFile(DataError):
    pass

class UnwritableFile(DataError):
    pass

# Domain errors
class InvalidDataset(DataError):
    pass

class SequenceTooShort(DataError):
    pass

class EmptyDataset(DataError):
    pass

class NoComparablePairs(DataError):
    pass

class EmptyPairList(DataError):
    pass

class DimensionMismatch(DataError):
    pass

class NonFiniteInput(DataError):
    pass

class ShapeMismatch(DataError):
    pass

class VersionMismatch(DataError):
    pass

class CacheMismatch(DataError):
    pass

class EmptyLayerList(ConfigError):
    pass

class ZeroWidthLayer(ConfigError):
    pass

class LengthMismatch(DataError):
    pass

class ConstantVector(DataError):
    pass

class SeriesTooShort(DataError):
    pass

class WindowTooLarge(DataError):
    pass

# Numeric failures
class DivergedLoss(NumericError):
    pass

class NumericBlowup(NumericError):
    pass

class IsolatedBallAfterRetries(NumericError):
    pass
