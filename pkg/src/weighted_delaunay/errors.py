'''
Weighted Delaunay

Errors

Everything the package raises for a geometric reason derives from GeometryError, itself a ValueError,
so callers that only care about bad input can catch ValueError.
'''


class GeometryError(ValueError):
    '''Base of all geometric failures.'''


class DegenerateTriangle(GeometryError):
    '''Three points are (numerically) collinear.'''


class CoincidentPoints(GeometryError):
    pass


class DegenerateEdge(GeometryError):
    pass


class NonpositiveWeight(GeometryError):
    pass


class DegenerateBisector(GeometryError):
    '''A bisector normal is not spacelike, or the two sites coincide.'''


class InvalidRadii(GeometryError):
    pass


class GeodesicsIntersect(GeometryError):
    '''Two geodesics meet or are asymptotic where disjoint ones are required.'''


class NoIntersection(GeometryError):
    '''Two bisectors do not meet inside the hyperbolic plane.'''


class InvalidSides(GeometryError):
    pass


class InvalidHexagon(GeometryError):
    pass


class InfeasibleFace(GeometryError):
    '''A face's side lengths violate the strict triangle inequality.'''


class MeshFormatError(GeometryError):
    '''A surface description is malformed or inconsistent.'''


class UncertifiedMesh(GeometryError):
    '''An operation needing a weighted Delaunay triangulation was given one with violated edges.'''

    def __init__(self, msg, violations=()):
        super().__init__(msg)
        self.violations = list(violations)


class NonConvexHinge(GeometryError):
    '''The hinge around an edge cannot be flipped.'''

    def __init__(self, msg, edge=None, margin=None):
        super().__init__(msg)
        self.edge = edge
        self.margin = margin


class PowerCenterInfeasible(GeometryError):
    '''A hyperbolic power center lies outside the plane, the weights are outside the admissible domain.'''

    def __init__(self, msg, edge=None):
        super().__init__(msg)
        self.edge = edge


class FlipLimitExceeded(GeometryError):

    def __init__(self, msg, flips=None, cap=None):
        super().__init__(msg)
        self.flips = flips
        self.cap = cap


class SwitchLimitExceeded(FlipLimitExceeded):
    pass
