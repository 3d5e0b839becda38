"""Exception hierarchy shared by all modules."""


class PolyidealError(Exception):
    """Base class for library errors."""


class ParseError(PolyidealError, ValueError):
    """Malformed grid or JSON input."""


class NotPolyominoError(PolyidealError, ValueError):
    """An operation that needs a (convex) polyomino got something else."""


class NotStackError(PolyidealError, ValueError):
    """The collection is not a stack polyomino in its current orientation."""


class NotInSemigroupError(PolyidealError, ValueError):
    pass


class NotALatticeError(PolyidealError, ValueError):
    pass


class NotSimpleError(PolyidealError, ValueError):
    pass


class ResourceCapError(PolyidealError, RuntimeError):
    """A configured size/degree cap would be exceeded."""
