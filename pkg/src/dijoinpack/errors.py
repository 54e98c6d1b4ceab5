"""Exception types shared across the package."""


class DijoinError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(DijoinError):
    """Malformed digraph / hypergraph / class text input."""


class NotADicut(DijoinError):
    """The requested vertex set is not the in-shore of a dicut."""


class NotBridgeless(DijoinError):
    """The underlying multigraph has a bridge."""


class NoDicut(DijoinError):
    """The digraph has no non-empty dicut."""


class EmptyClass(DijoinError):
    """A non-empty class of non-empty dicuts was required."""


class TooLarge(DijoinError):
    """An exhaustive search exceeded its configured cap."""


class CapExceeded(DijoinError):
    """A size guard (clone count, edge count) was exceeded."""


class TooManyVertices(DijoinError):
    """The subset-vertex construction would create 2^|V| vertices."""


class MismatchedVertexSets(DijoinError):
    """Bipartitions of different vertex sets were compared."""


class EmptyCorner(DijoinError):
    """A corner of a nested pair degenerated to a trivial bipartition."""


class NotNested(DijoinError):
    """No nested representation exists for the class."""


class NotTwoColourable(DijoinError):
    """A 2-colouring failed where balancedness was assumed.

    Carries the failure witness produced by ``two_colour``.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotUniform(DijoinError):
    """Class dicuts do not all have the requested size."""


class NotCornerClosed(DijoinError):
    """A corner of a crossing class pair is missing from the class."""


class UnknownFixture(DijoinError):
    """No bundled fixture has the requested name."""


class OracleMismatch(DijoinError):
    """A constructive packing disagreed with the brute-force oracle.

    This always indicates an internal bug, never bad input.
    """
