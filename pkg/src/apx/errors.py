"""Exception types shared across the package."""


class ApxError(Exception):
    """Base class for all package errors."""


class ParseError(ApxError):
    """Graph input file could not be parsed."""


class SingularMatrix(ApxError):
    """Square system has no unique solution."""


class EdgeNotInGraph(ApxError):
    """Requested edge is not an edge of the graph."""


class NotACycle(ApxError):
    """Edge set does not form a single cycle."""


class NoSuchSpanningTree(ApxError):
    """No spanning tree satisfies the include/exclude constraint."""


class DisconnectedGraph(ApxError):
    """Operation requires a connected graph."""


class NotFullDimensional(ApxError):
    """Point set does not affinely span its ambient space."""


class CorrespondenceViolation(ApxError):
    """Cell-to-facet correspondence failed; signals an implementation
    or hypothesis failure, never an expected outcome."""


class NotAValidSharedEdgeDecomposition(ApxError):
    """The supplied subgraph pair does not share exactly one edge."""


class PreconditionViolated(ApxError):
    """Subset contains exactly one of the two contracted-edge points."""


class NotCorankOne(ApxError):
    """Signature is only defined for corank-1 subsets."""


class UnsupportedCorank(ApxError):
    """No closed-form volume for this corank; use the triangulation oracle."""


class NoValidCyclePair(ApxError):
    """Corank-2 cell admits no basis pair with an even cycle avoiding
    the contracted edge."""


class TreeMissingContractedEdge(ApxError):
    """Spanning tree supplied to the alternating-basis construction must
    contain the contracted edge."""


class MorphismViolation(ApxError):
    """Matroid morphism property failed; never expected."""
