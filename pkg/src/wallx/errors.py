"""Exception types shared across the package.

Every domain error derives from WallxError so the command line front end can
map them to exit code 2 in one place.
"""


class WallxError(Exception):
    """Base class for domain errors."""


class BadShape(WallxError):
    pass


class NotABijection(WallxError):
    pass


class MonotonicityViolated(WallxError):
    pass


class IndexOutOfRange(WallxError):
    pass


class OddRhombusCount(WallxError):
    pass


class SignSystemInfeasible(WallxError):
    pass


class NotComposable(WallxError):
    pass


class NotRealRoot(WallxError):
    pass


class OnImaginaryWall(WallxError):
    pass


class OnWall(WallxError):
    pass


class DegeneratePath(WallxError):
    pass


class CapMismatch(WallxError):
    pass


class NonUnitConstantTerm(WallxError):
    pass


class ZeroExponent(WallxError):
    pass


class ZeroQExponent(WallxError):
    pass


class NotCoordinateRep(WallxError):
    pass


class NoneFound(WallxError):
    pass


class NotUnique(WallxError):
    pass


class NotOnWall(WallxError):
    pass


class RelationViolated(WallxError):
    pass


class QuiverMismatch(WallxError):
    pass


class OddParity(WallxError):
    pass


class WindowTooLarge(WallxError):
    pass


class ModeMismatch(WallxError):
    pass
