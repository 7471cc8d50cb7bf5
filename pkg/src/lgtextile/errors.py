class LgtError(Exception):
    """Base class for library errors. `witness` carries a JSON-friendly dict."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness or {}


class DimensionError(LgtError):
    pass


class SpecificationError(LgtError):
    pass


class LevelError(LgtError):
    """Raised when an explicit system runs out of levels."""


class NotLeftResolvingError(LgtError):
    pass


class InvalidSystemError(LgtError):
    pass


class InadmissibleWordError(LgtError):
    pass


class DecoderError(LgtError):
    pass


class ExtensionError(LgtError):
    pass


class ParseError(LgtError):
    def __init__(self, message, line=None, col=None):
        loc = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(loc + message, {"line": line, "col": col})
        self.line = line
        self.col = col
