"""Exception types shared across the package.

Parse errors carry the 1-based line number of the offending line so CLI
and service layers can point at it.
"""

from __future__ import annotations


class HomsatError(Exception):
    """Base class for all domain errors raised by this package."""


# -- graph files and graph values ------------------------------------------

class GraphFormatError(HomsatError):
    pass


class MissingHeader(GraphFormatError):
    pass


class MalformedLine(GraphFormatError):
    def __init__(self, lineno: int, why: str):
        super().__init__(f"line {lineno}: {why}")
        self.lineno = lineno


class LoopEdge(GraphFormatError):
    def __init__(self, vertex: int):
        super().__init__(f"loop edge at vertex {vertex}")
        self.vertex = vertex


class VertexOutOfRange(GraphFormatError):
    pass


class DimensionMismatch(HomsatError):
    pass


class BudgetExceeded(HomsatError):
    pass


class InvalidWitness(HomsatError):
    pass


# -- CNF ---------------------------------------------------------------------

class EmptyTarget(HomsatError):
    pass


class VocabularyMismatch(HomsatError):
    pass


class MalformedDimacs(HomsatError):
    def __init__(self, lineno: int, why: str):
        super().__init__(f"line {lineno}: {why}")
        self.lineno = lineno


# -- proofs --------------------------------------------------------------

class PivotMissing(HomsatError):
    pass


class PivotSameSign(HomsatError):
    pass


class MalformedTrace(HomsatError):
    def __init__(self, lineno: int, why: str):
        super().__init__(f"line {lineno}: {why}")
        self.lineno = lineno


# -- certificates ------------------------------------------------------------

class PreconditionViolated(HomsatError):
    pass


class TargetNotBipartite(HomsatError):
    """Raised when the color graph is not bipartite; carries the odd walk."""

    def __init__(self, walk):
        super().__init__(f"target graph has an odd closed walk of length {len(walk.verts)}")
        self.walk = walk


# -- interpolation -------------------------------------------------------

class SplitInvalid(HomsatError):
    def __init__(self, clause_index: int):
        super().__init__(f"clause {clause_index} mixes local variables of both sides")
        self.clause_index = clause_index


class NotARefutation(HomsatError):
    pass


class UnboundInput(HomsatError):
    pass
