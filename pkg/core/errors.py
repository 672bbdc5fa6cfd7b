"""Exception hierarchy shared by every module of the toolkit.

Library code raises these; only the command-line front end turns them into
exit codes. Failed checks are reported as verdicts, not raised.
"""


class AOTError(Exception):
    """Base class for all toolkit errors."""


class InvalidSystem(AOTError):
    """A set of rows does not form a particular object system."""


class EmptySystem(InvalidSystem):
    pass


class NonUniformWidth(InvalidSystem):
    pass


class ZeroWidth(InvalidSystem):
    pass


class DuplicateColumns(InvalidSystem):
    pass


class UnknownValue(AOTError):
    """A row entry is not among the universe's particular objects."""


class UnknownObject(AOTError):
    pass


class UnknownState(AOTError):
    pass


class UnknownSystem(AOTError):
    pass


class RowNotInSystem(AOTError):
    pass


class DifferentSystems(AOTError):
    pass


class InfeasibleBounds(AOTError):
    pass


class ParticularsMismatch(AOTError):
    pass


class SortError(AOTError):
    pass


class UnboundVariable(AOTError):
    pass


class FormulaSyntaxError(AOTError):
    def __init__(self, message, position=None, line=None, column=None):
        self.position = position
        self.line = line
        self.column = column
        if column is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class InputFormatError(AOTError):
    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        location = ""
        if path is not None:
            location = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(f"{location}{message}")
