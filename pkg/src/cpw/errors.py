"""Exception hierarchy shared by every cpw module."""


class CpwError(Exception):
    """Base class for all workbench errors."""


class ParseError(CpwError, ValueError):
    def __init__(self, message, position, expected=(), text=None):
        self.position = position
        self.expected = tuple(sorted(set(expected)))
        self.text = text
        detail = f"{message} at position {position}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class DivisionByZero(CpwError, ZeroDivisionError):
    pass


class DimensionMismatch(CpwError, ValueError):
    pass


class KindMismatch(CpwError, TypeError):
    """Point, coefficient or model variants do not agree."""


class ModelMismatch(CpwError, TypeError):
    """Crossed-product elements over different systems were combined."""


class ZeroPeriod(CpwError, ValueError):
    pass


class Unsupported(CpwError):
    """The model lacks a capability the operation needs."""

    def __init__(self, message, capability=None):
        self.capability = capability
        super().__init__(message)


class NotRegularModel(Unsupported):
    def __init__(self, message):
        super().__init__(message, "regular_bumps")


class NotUnital(Unsupported):
    def __init__(self, message):
        super().__init__(message, "unital")


class NotSeparable(CpwError, ValueError):
    pass


class PreconditionFailed(CpwError, ValueError):
    def __init__(self, message, capability=None):
        self.capability = capability
        super().__init__(message)


class ZeroElement(CpwError, ValueError):
    pass


class EmptyGenerators(CpwError, ValueError):
    pass


class WindowOverflow(CpwError, ValueError):
    pass


class ConfigError(CpwError, ValueError):
    def __init__(self, message, path=""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
