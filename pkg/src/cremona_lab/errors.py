"""Exception types shared across the package.

Every error raised by library code derives from CremonaLabError, so callers
can catch one base class at API boundaries (the CLI maps them to exit codes).
"""

from __future__ import annotations

__all__ = [
    "CremonaLabError",
    "OrderBoundExceeded",
    "DegreeMismatch",
    "NotAnAction",
    "NotSurjective",
    "NotAHomomorphism",
    "NotAGroup",
    "DegreeOutOfRange",
    "NotAnIsometry",
    "NotIntersectionPreserving",
    "NotExtendable",
    "DegreeUnderflow",
    "UnsupportedConductor",
    "NotARootOfUnity",
    "PositiveDimensionalComponent",
    "LineEnumerationFailure",
    "NotTorusFree",
    "NotInWeylGroup",
    "MissingOracleEntry",
    "NotAProjectiveSubgroupTag",
    "CatalogValidationError",
    "MalformedDescriptor",
]


class CremonaLabError(Exception):
    """Base class for all library errors."""


class OrderBoundExceeded(CremonaLabError):
    """Group closure grew past the configured element bound."""


class DegreeMismatch(CremonaLabError):
    """Permutations of different degrees were combined."""


class NotAnAction(CremonaLabError):
    """A supplied point action violates the group axioms."""


class NotSurjective(CremonaLabError):
    """A map that must be onto is not."""


class NotAHomomorphism(CremonaLabError):
    """Generator images do not extend to a well defined homomorphism."""


class NotAGroup(CremonaLabError):
    """An element list is not closed under composition and inverse."""


class DegreeOutOfRange(CremonaLabError):
    """A del Pezzo degree outside the supported range was requested."""


class NotAnIsometry(CremonaLabError):
    """A matrix fails to preserve the intersection form or the canonical class."""


class NotIntersectionPreserving(CremonaLabError):
    """A permutation of exceptional classes changes intersection numbers."""


class NotExtendable(CremonaLabError):
    """A class permutation admits no integral isometry extension."""


class DegreeUnderflow(CremonaLabError):
    """A blowup would drop the degree below one."""


class UnsupportedConductor(CremonaLabError):
    """Arithmetic left the supported range of cyclotomic fields."""


class NotARootOfUnity(CremonaLabError):
    """An element expected to be a root of unity is not one."""


class PositiveDimensionalComponent(CremonaLabError):
    """A fixed locus meets the surface in a curve, not in points."""


class LineEnumerationFailure(CremonaLabError):
    """Line enumeration did not produce the expected configuration."""


class NotTorusFree(CremonaLabError):
    """A subgroup of the sextic automorphism group meets the torus."""


class NotInWeylGroup(CremonaLabError):
    """A matrix does not belong to the hexagon symmetry group."""


class MissingOracleEntry(CremonaLabError):
    """The orbit oracle has no entry for a reached model."""


class NotAProjectiveSubgroupTag(CremonaLabError):
    """An isomorphism type is not realized by a subgroup of PGL2."""


class CatalogValidationError(CremonaLabError):
    """A shipped data asset failed its load-time invariants."""


class MalformedDescriptor(CremonaLabError):
    """A descriptor file or literal violates the input schema."""

    def __init__(self, field: str, reason: str):
        self.field = field
        self.reason = reason
        super().__init__(f"{field}: {reason}")
