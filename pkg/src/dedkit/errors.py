class LogicError(Exception):
    """Base class for every error raised by dedkit."""


class SignatureError(LogicError):
    pass


class ParseError(LogicError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class CaptureError(LogicError):
    """A substitution would bind a variable of the substituted term."""


class JustificationError(LogicError):
    def __init__(self, line, message="no justification found"):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DeductionError(LogicError):
    """A proof transformation was asked to work outside its preconditions."""


class NotACode(LogicError):
    pass


class UnknownSymbol(LogicError):
    pass


class InvalidWitness(LogicError):
    pass


class OpenFormulaError(LogicError):
    pass


class UnassignedVariable(LogicError):
    pass
