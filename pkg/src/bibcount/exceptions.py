class BibcountError(Exception):
    pass


class SchemaError(BibcountError):
    """Input is missing a mandatory column or is otherwise not parseable."""

    def __init__(self, message, column=None):
        super().__init__(message)
        self.column = column


class EncodingError(SchemaError):
    pass


class RowError(BibcountError):
    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class CreditRefusal(BibcountError):
    """A record cannot be credited, typically because it has no countries."""


class UndefinedIndicatorError(BibcountError, ValueError):
    pass


class ConsistencyError(BibcountError):
    pass


class StatisticsError(BibcountError, ValueError):
    pass
