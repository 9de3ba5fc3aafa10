"""Exception hierarchy shared by every layer of the engine."""


class IteriteError(Exception):
    """Base class for all engine errors."""

    span = None  # (line, column) of the offending source, set by the evaluator


class DegreeMismatch(IteriteError, ValueError):
    pass


class IndexOutOfRange(IteriteError, IndexError):
    pass


class NotASubgroup(IteriteError, ValueError):
    pass


class MalformedAction(IteriteError, ValueError):
    pass


class GroupMismatch(IteriteError, ValueError):
    pass


class CapExceeded(IteriteError):
    pass


class GroupTooLarge(CapExceeded):
    pass


class NonDiscreteEl(IteriteError, ValueError):
    pass


class MissingAssignment(IteriteError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "missing assignment"


class UnboundIdentifier(IteriteError, NameError):
    pass


class IoError(IteriteError, OSError):
    pass


class ParseError(IteriteError, SyntaxError):
    def __init__(self, message, line, column, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        self.span = (line, column)
        text = f"{message} at line {line}, column {column}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(text)

    def __str__(self):
        return self.args[0]
