'''
Weighted Delaunay

Euclidean power geometry

Planar primitives for weighted points: power centers, radical lines, signed heights and the circle
orthogonality measure. Weights are in units of length squared and may be any real number here, the
admissible domains are enforced at the surface layer.
'''
# Python imports
from dataclasses import dataclass
from typing import NamedTuple

# Package imports
import numpy as np

from .errors import CoincidentPoints, DegenerateEdge, DegenerateTriangle, NonpositiveWeight
from .options import DEFAULT_TOLERANCE


class Point2(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class WeightedPoint:
    position: Point2
    weight: float

    @classmethod
    def of(cls, position, weight):
        position = np.asarray(position, dtype=float)
        return cls(Point2(float(position[0]), float(position[1])), float(weight))


@dataclass(frozen=True)
class PowerCenterE:
    '''
    The point of equal power to three weighted points, and that common power w_ijk. When the power is
    positive, the circle of radius sqrt(power) about center meets all three weight circles orthogonally.
    '''
    center: Point2
    power: float

    @property
    def radius(self):
        return float(np.sqrt(self.power)) if self.power > 0 else 0.0


@dataclass(frozen=True)
class Line2:
    '''
    The oriented line {q : normal·q = offset}, normal of unit length.
    '''
    normal: Point2
    offset: float

    def side(self, q):
        return float(np.dot(self.normal, np.asarray(q, dtype=float)) - self.offset)

    def foot(self, q):
        '''The orthogonal projection of q onto the line.'''
        q = np.asarray(q, dtype=float)
        n = np.asarray(self.normal)
        return Point2(*(q - self.side(q) * n))


def _xy(p):
    if isinstance(p, WeightedPoint):
        p = p.position
    return np.asarray(p, dtype=float)


def cross2(u, v):
    return float(u[0] * v[1] - u[1] * v[0])


def power(q, a):
    '''
    The power of point q with respect to weighted point a: |q - a|² - w_a.
    '''
    d = _xy(q) - _xy(a)
    return float(d @ d) - a.weight


def power_center(a, b, c, tol=DEFAULT_TOLERANCE):
    '''
    Solves |O - p|² - W = w_p for p = a, b, c.

    Subtracting the equation for a from the other two leaves a 2×2 linear system in O, solved in
    coordinates centred on a.

    :param a: WeightedPoint
    :param b: WeightedPoint
    :param c: WeightedPoint
    :return: PowerCenterE
    '''
    pa, pb, pc = _xy(a), _xy(b), _xy(c)
    u, v = pb - pa, pc - pa

    scale = max(u @ u, v @ v)
    det = cross2(u, v)
    if scale == 0 or abs(det) <= tol.eps * scale:
        raise DegenerateTriangle(f"Points {pa.tolist()}, {pb.tolist()}, {pc.tolist()} are collinear")

    rhs = np.array([u @ u - b.weight + a.weight, v @ v - c.weight + a.weight]) / 2
    o = np.linalg.solve(np.array([u, v]), rhs)

    return PowerCenterE(Point2(*(o + pa)), float(o @ o) - a.weight)


def radical_line(a, b, tol=DEFAULT_TOLERANCE):
    '''
    The locus of equal power to a and b, a line perpendicular to ab, oriented with a on its positive
    side.

    Up to sign the side function is (power to b - power to a) / (2|ab|). When a's circle swallows the
    line both points sit on the same side and the sign follows a, not the smaller power.
    '''
    pa, pb = _xy(a), _xy(b)
    u = pb - pa
    d = float(np.hypot(*u))
    scale = max(float(np.hypot(*pa)), float(np.hypot(*pb)), 1.0)
    if d <= tol.eps * scale:
        raise CoincidentPoints(f"Radical line of coincident points {pa.tolist()}")

    c = (pb @ pb - pa @ pa - b.weight + a.weight) / (2 * d)
    n = -u / d
    if float(n @ pa) + c < 0:
        n, c = -n, -c
    return Line2(Point2(*n), -float(c))


def signed_height(center, edge, opposite, tol=DEFAULT_TOLERANCE):
    '''
    Distance from center to the line through edge, positive when center and opposite are on the same side.

    :param center: a point
    :param edge: a pair of points
    :param opposite: a point off the edge line
    '''
    p, q = _xy(edge[0]), _xy(edge[1])
    e = q - p
    length = float(np.hypot(*e))
    scale = max(float(np.hypot(*p)), float(np.hypot(*q)), 1.0)
    if length <= tol.eps * scale:
        raise DegenerateEdge(f"Edge endpoints coincide at {p.tolist()}")

    side = cross2(e, _xy(opposite) - p)
    if abs(side) <= tol.eps * length * length:
        raise DegenerateEdge("Opposite vertex lies on the edge line")

    return float(np.sign(side)) * cross2(e, _xy(center) - p) / length


def circles_orthogonal(a, b):
    '''
    d(a, b)² - w_a - w_b: zero when the weight circles meet at right angles, positive when they are
    further apart than that.
    '''
    if a.weight <= 0 or b.weight <= 0:
        raise NonpositiveWeight(f"Weights {a.weight}, {b.weight} must be positive")
    d = _xy(a) - _xy(b)
    return float(d @ d) - a.weight - b.weight
