"""Exception hierarchy shared by every wangforge module."""


class WangforgeError(Exception):
    """Base class for all domain errors raised by this package."""


class ColorParseError(WangforgeError, ValueError):
    pass


class MalformedTiling(WangforgeError, ValueError):
    pass


class NotFound(WangforgeError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "not found"


class InvalidRequest(WangforgeError, ValueError):
    pass


class OracleTooLarge(WangforgeError, ValueError):
    pass


class DecodeError(WangforgeError, ValueError):
    pass


class CannotLocateRoot(DecodeError):
    pass


class WindowTooSmall(WangforgeError, ValueError):
    pass


class UnsupportedRender(WangforgeError, ValueError):
    pass


class MalformedPredicate(WangforgeError, ValueError):
    pass
