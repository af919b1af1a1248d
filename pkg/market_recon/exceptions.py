"""Custom exceptions for market process reconstruction."""

# Error messages
INSUFFICIENT_DATA = "Not enough observations"
DEGENERATE_SCHEME = "Return series has zero spread and cannot be coded"
SYMBOL_OUT_OF_ALPHABET = "Symbol outside the alphabet"
EXPECTED_COLUMNS_MISSING = "Header does not match the expected columns"
WRONG_FIELD_COUNT = "Row has the wrong number of fields"
NOT_UTF8 = "Input is not valid UTF-8"
NO_DISTRIBUTION = "Model holds no training transitions"


class MarketReconException(Exception):
    """Base exception for market reconstruction errors."""
    pass


class PriceFormatException(MarketReconException):
    """Exception for malformed price CSV input."""

    def __init__(self, name, message, line=None):
        self.name = name
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PriceValidationException(MarketReconException):
    """Exception for price series invariant violations."""

    def __init__(self, name, message, row=None):
        self.name = name
        self.row = row
        super().__init__(message)


class InsufficientDataException(MarketReconException):
    """Exception for inputs too short for the requested computation."""

    def __init__(self, name, message, required=None, available=None):
        self.name = name
        self.required = required
        self.available = available
        if required is not None:
            message += f" (need {required}, have {available})"
        super().__init__(message)


class TrendFitException(MarketReconException):
    """Exception for underdetermined or singular trend fits."""

    def __init__(self, name, message, index=None):
        self.name = name
        self.index = index
        super().__init__(message)


class DomainException(MarketReconException):
    """Exception for arguments outside their valid domain."""

    def __init__(self, name, message, value=None):
        self.name = name
        self.value = value
        super().__init__(message)


class CodingException(MarketReconException):
    """Exception for invalid coding schemes."""

    def __init__(self, name, message):
        self.name = name
        super().__init__(message)


class TransitionModelException(MarketReconException):
    def __init__(self, name, message, context=None):
        self.name = name
        self.context = context
        super().__init__(message)


class ForecastException(MarketReconException):
    """Exception for invalid forecast or simulation requests."""

    def __init__(self, name, message):
        self.name = name
        super().__init__(message)


class StylizedFactsException(MarketReconException):
    def __init__(self, name, message, offending=None):
        self.name = name
        self.offending = offending or []
        if self.offending:
            message += f": {self.offending}"
        super().__init__(message)


class ConfigException(MarketReconException):
    """Exception for invalid run configuration."""

    def __init__(self, name, message):
        self.name = name
        super().__init__(message)
