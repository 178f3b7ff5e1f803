"""Exception types raised by the library.

Every error is a ``ValueError`` subclass so that callers who only care about
"bad input" can catch one thing.
"""


class MagError(ValueError):
    """Base class for all library errors."""


class BadName(MagError):
    pass


class SelfLoop(MagError):
    pass


class DuplicateEdge(MagError):
    pass


class UnknownVertex(MagError):
    pass


class ParseError(MagError):
    pass


class NotAncestral(MagError):
    pass


class NotMaximal(MagError):
    pass


class NotADag(MagError):
    pass


class OverlapError(MagError):
    pass


class DisjointnessError(MagError):
    pass


class EmptySetError(MagError):
    pass


class GuardExceeded(MagError):
    pass


class VertexSetMismatch(MagError):
    pass


class BadPartition(MagError):
    pass


class BadProbability(MagError):
    pass


class UnknownNode(MagError):
    pass
