"""Exception types shared across the package."""


class HoradamError(Exception):
    """Base class for errors raised by this package."""


class NegativeIndexWithZeroQ(HoradamError, ValueError):
    """A negative index (or inverse power) was requested while ``q == 0``."""


class NegativePowerUnsupported(HoradamError, ValueError):
    """Negative matrix powers exist only for the companion matrix."""


class MismatchedPQ(HoradamError, ValueError):
    """Two sequence families that must share ``(p, q)`` do not."""


class UnknownIdentity(HoradamError, KeyError):
    def __str__(self):
        return f"unknown identity: {self.args[0]!r}"


class UnknownMatrix(HoradamError, KeyError):
    def __str__(self):
        return f"unknown named matrix: {self.args[0]!r}"


class IndexConstraintError(HoradamError, ValueError):
    """An identity was evaluated outside the index range where it is stated."""
