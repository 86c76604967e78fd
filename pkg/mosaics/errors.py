from typing import Optional


class MosaicError(Exception):
    """Base class for every domain failure raised by the mosaics package."""


class ConfigError(MosaicError):
    pass


class MosaicParseError(MosaicError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MaskParseError(MosaicParseError):
    pass


class InvalidMosaicError(MosaicError):
    def __init__(self, report, message: str = "mosaic is not suitably connected"):
        self.report = report
        super().__init__(f"{message} ({len(report.violations)} violations)")


class WrongSystemError(MosaicError):
    pass


class NotCheckerboardError(MosaicError):
    pass


class PushInError(MosaicError):
    """A cap could not be pushed in; signals a broken internal contract."""


class CrossingBudgetError(MosaicError):
    pass


class SearchRangeError(MosaicError):
    pass


class EmptyShapeError(MosaicError):
    pass


class UnknownFormatError(MosaicError):
    pass
