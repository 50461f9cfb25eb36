"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class TrisectError(Exception):
    """Base class for all errors raised by this package."""


class MalformedMap(TrisectError):
    """A face list does not describe a valid oriented surface."""


class NonTransverse(TrisectError):
    """Two curves share an edge or touch without crossing."""


class NotALoop(TrisectError):
    """An attachment curve is not a closed loop in the 1-skeleton."""


class OrientationClash(TrisectError):
    """A boundary operator composed with the next one is nonzero."""


class LengthMismatch(TrisectError):
    """Two boundary circles identified by a gluing have different lengths."""


class LabelMismatch(TrisectError):
    """Two boundary circles identified by a gluing carry different labels."""


class DimensionOutOfRange(TrisectError):
    """A homology dimension outside the chain complex was requested."""


class InvalidDiagram(TrisectError):
    """A diagram fails validation where a valid one is required."""


class SeparatingArc(TrisectError):
    """A stabilisation arc disconnects its surface."""


class InvalidSite(TrisectError):
    """Site data for a move does not describe a legal location."""


class PatternNotFound(TrisectError):
    """The local configuration required by a move is absent."""


class NotStandardized(TrisectError):
    """A shadow lift was requested on a diagram not in standard position."""


class OddBridgeCount(TrisectError):
    """A shadow diagram has an odd number of bridge points."""


class BudgetExceeded(TrisectError):
    """An exhaustive search ran past its budget."""

    def __init__(self, message: str, partial: list | None = None) -> None:
        super().__init__(message)
        self.partial = partial if partial is not None else []


class InconsistentIndices(TrisectError):
    """Computed indices violate the relations between them."""


class DiskSector(SeparatingArc):
    """A stabilisation arc was requested in a disk sector, where every neat arc separates."""


class BandObstructed(TrisectError):
    """A handleslide band meets other curves or cannot be thickened."""


class DisconnectedPropagation(TrisectError):
    """Orientation propagation did not reach every surface."""


class OpenStrand(TrisectError):
    """Tracing shadow arcs did not close into loops."""


class MissingOrientation(TrisectError):
    """Crossing signs were requested without an orientation assignment."""


class TooManyCrossings(TrisectError):
    """A link diagram exceeds the state-sum crossing bound."""


class SameComponent(TrisectError):
    """A linking number was requested for a component with itself."""


class BadPartition(TrisectError):
    """Link components were not split into two disjoint sides."""


class FormatError(TrisectError):
    """Base class for diagram file errors; carries a location."""

    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class DiagramSyntaxError(FormatError):
    """The file is not well-formed."""


class DanglingReference(FormatError):
    """The file refers to a vertex, face or curve that does not exist."""


class VersionMismatch(FormatError):
    """The file declares an unsupported format version."""
