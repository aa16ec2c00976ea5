"""Exception types shared across the package."""


class VarprioError(Exception):
    """Base class for all errors raised by varprio."""


class ParseError(VarprioError):
    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        self.message = message
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(f"{where}{message}")


class UnknownOption(VarprioError):
    """An option name is not part of the declared option set."""


class TooManyAtoms(VarprioError):
    """A formula mentions more atoms than the enumeration bound allows."""


class TooManyOptions(VarprioError):
    """A configuration space is too large to enumerate."""


class EmptySpace(VarprioError):
    """No configuration satisfies the feature model."""


class NoBugs(VarprioError):
    """An evaluation was requested without any bug."""
