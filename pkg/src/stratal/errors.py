class StratalError(Exception):
    pass


class LevelMismatch(StratalError):
    pass


class FreshnessViolation(StratalError):
    pass


class KindError(StratalError):
    pass


class StratificationRequired(StratalError):
    pass


class NotARedex(StratalError):
    pass


class MeasureUnderflow(StratalError):
    pass


class ModeError(StratalError):
    pass


class ParseError(StratalError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column
