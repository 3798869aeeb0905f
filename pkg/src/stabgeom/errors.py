"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class StabGeomError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(StabGeomError, ValueError):
    pass


class UnsupportedSize(StabGeomError, ValueError):
    pass


class NoModulusAvailable(StabGeomError, ValueError):
    pass


class FieldMismatch(StabGeomError, ValueError):
    pass


class AmbientMismatch(StabGeomError, ValueError):
    pass


class IndexOutOfRange(StabGeomError, IndexError):
    pass


class OddAmbient(StabGeomError, ValueError):
    pass


class InvalidRange(StabGeomError, ValueError):
    pass


class BoundaryCase(StabGeomError, ValueError):
    """The deviation bound does not apply when the generic intersection is on the boundary."""


class InvalidEpsilon(StabGeomError, ValueError):
    pass


class TooLarge(StabGeomError, ValueError):
    pass


class OddL(StabGeomError, ValueError):
    pass


class InvalidL(StabGeomError, ValueError):
    pass


class ConfigInvalid(StabGeomError, ValueError):
    pass


class OddLForConcentration(ConfigInvalid):
    pass


class SubspaceFileError(StabGeomError, ValueError):
    pass
