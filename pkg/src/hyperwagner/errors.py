"""Exception types raised across the package.

Everything derives from HypergraphError so callers can catch broadly.
Construction errors carry enough context to report the offending facet or
vertex; guard errors name the limit that was hit.
"""
from __future__ import annotations


class HypergraphError(Exception):
    """Base class for all errors raised by this package."""


# construction

class NonUniformFacet(HypergraphError):
    """A facet does not have exactly d vertices."""


class LoopFacet(HypergraphError):
    """A facet repeats a vertex."""


class DuplicateFacet(HypergraphError):
    """The same facet appears twice; complexes are simple."""


class VertexOutOfRange(HypergraphError):
    """A vertex id falls outside 0..n-1."""


class BadParameters(HypergraphError):
    """Generator or operation parameters outside their stated ranges."""


# queries

class DimensionOutOfRange(HypergraphError):
    """A face dimension outside 0..d-1 was requested."""


class NotAFace(HypergraphError):
    """The given vertex tuple is not a face of the complex."""


class NotAVertex(HypergraphError):
    """The given vertex id is not a vertex of the complex."""


class NotAFacet(HypergraphError):
    """The given face is not a facet of the complex."""


class UniformityMismatch(HypergraphError):
    """Two complexes (or a complex and an operation) disagree on d."""


class Disconnected(HypergraphError):
    """The operation requires a connected complex."""


# guards

class TooSmall(HypergraphError):
    """The structure is below the minimum size for the operation."""


class TooLargeForOracle(HypergraphError):
    """Input exceeds the brute-force oracle guard."""


class TooLargeForEnumeration(HypergraphError):
    """Input exceeds an exhaustive-enumeration guard."""


class PreconditionViolated(HypergraphError):
    """A stated operation precondition does not hold."""


class NoLegalAttachment(HypergraphError):
    """A staged build step cannot be glued legally."""


# structural operations

class NotSubcomplex(HypergraphError):
    """The claimed subcomplex has facets outside the host complex."""


class SphereNotSubcomplex(NotSubcomplex):
    """The designated sphere is not a subcomplex of the host."""


class BridgesOfDifferentSpheres(HypergraphError):
    """Bridges being compared were computed against different spheres."""


class NotClosed(HypergraphError):
    """The operation requires a closed complex (no pendant facets)."""


class NotACut(HypergraphError):
    """The given vertex set does not disconnect the 1-skeleton."""


class InconsistentMarkers(HypergraphError):
    """Marked components disagree on the marker vertex set."""


# serialization

class ParseError(HypergraphError):
    """Input document is malformed (bad JSON, missing or mistyped fields)."""


class ValidationError(HypergraphError):
    """Input document parsed but violates complex invariants."""
