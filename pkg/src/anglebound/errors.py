"""Exception hierarchy shared by all modules.

Every exception below signals a violated precondition or an input outside
the supported regime; the CLI maps them to exit code 2. Anything else that
escapes is an internal failure (exit code 1).
"""


class PreconditionError(Exception):
    """Base class for caller errors: bad arguments or unmet preconditions."""


class DegenerateTriple(PreconditionError):
    """Angle requested at a vertex that coincides with one of its rays' endpoints."""


class OutOfRange(PreconditionError):
    """Numeric argument outside the domain of the requested quantity."""


class DegenerateSimplex(PreconditionError):
    """Simplex vertices are affinely dependent beyond tolerance."""


class NotInHull(PreconditionError):
    """Point is not contained in the convex hull of the given set."""


class NotInterior(PreconditionError):
    """Point lies on or outside the boundary where a strict interior point is required."""


class NotConvexPosition(PreconditionError):
    """Operation requires every point to be a vertex of the set's convex hull."""


class DegenerateHull(PreconditionError):
    """Convex hull is not full-dimensional in the ambient space."""


class NotHemispherical(PreconditionError):
    """Spherical points do not fit in an open hemisphere, so no cap of radius < pi/2 exists."""


class CapTooSmall(PreconditionError):
    """Requested cap half-angle cannot contain the rays at some vertex."""

    def __init__(self, vertex_index: int, required_radius: float, allowed: float):
        self.vertex_index = vertex_index
        self.required_radius = required_radius
        self.allowed = allowed
        super().__init__(
            f"rays at vertex {vertex_index} need cap radius "
            f"{required_radius:.12g} > allowed {allowed:.12g}"
        )


class CoverageFailed(PreconditionError):
    """Greedy line covering could not cover the probe set within the iteration cap."""


class ScaleExhausted(PreconditionError):
    """Doubling construction ran out of scale doublings before certifying the angle bound."""


class ColoringFailed(PreconditionError):
    """Some segment direction is not within the tolerance angle of any line."""


class HypothesisViolated(PreconditionError):
    """Counting hypothesis of the monochromatic odd-cycle lemma does not hold."""
