"""Exception hierarchy shared by all kgonpack modules."""


class KgonError(ValueError):
    """Base class for domain errors (bad geometry, infeasible input, ...)."""


class GeometryError(KgonError):
    """Degenerate or otherwise invalid geometric input."""


class InfeasibleError(GeometryError):
    """An intersection of half-planes is empty."""


class OverlapError(GeometryError):
    """Two unit disks overlap."""


class NotTangentPolygonError(GeometryError):
    """A polygon side does not touch any disk of the packing."""


class ContainmentError(GeometryError):
    """A disk sticks out of a polygon that is supposed to contain it."""


class ConstructionError(KgonError):
    """No construction is available for the requested (n, k)."""


class NoFeasibleCandidateError(KgonError):
    """The optimizer did not find any feasible polygon."""
