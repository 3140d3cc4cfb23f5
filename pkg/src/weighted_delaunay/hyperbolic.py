'''
Weighted Delaunay

Hyperbolic plane primitives

Everything works in the hyperboloid model: points are vectors p with <p, p> = -1 and z > 0 under the
Minkowski product <a, b> = a0 b0 + a1 b1 - a2 b2, and a geodesic is {q : <q, n> = 0} for a spacelike
unit normal n. With that choice both weighted bisectors used here, the cosh ratio one for vertex radii
and the sinh one for boundary geodesics, are linear.

Orientation: geodesic_through(p, q) takes the normal whose positive side is on the left when walking
from p to q. Signed distance to a geodesic is arcsinh <q, n>.

The Poincaré disk and upper half plane are only conversion targets.
'''
# Python imports
import math

from dataclasses import dataclass
from typing import NamedTuple

# Package imports
import numpy as np

from .errors import (DegenerateBisector, DegenerateTriangle, GeodesicsIntersect, GeometryError, InfeasibleFace,
                     InvalidHexagon, InvalidRadii, InvalidSides, NoIntersection)
from .options import DEFAULT_TOLERANCE

J = np.diag([1.0, 1.0, -1.0])


class HPoint(NamedTuple):
    x: float
    y: float
    z: float


ORIGIN = HPoint(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class HGeodesic:
    n: tuple

    @property
    def normal(self):
        return np.asarray(self.n, dtype=float)

    def flipped(self):
        return HGeodesic(tuple(-self.normal))


@dataclass(frozen=True)
class PowerCenterH:
    '''
    The point O with cosh d(O, v)/cosh r_v equal for three vertices. ratio is that common value,
    dual_radius its arccosh (0 when the ratio is below 1 and the dual circle is imaginary).
    '''
    center: HPoint
    ratio: float

    @property
    def dual_radius(self):
        return math.acosh(max(1.0, self.ratio))


@dataclass(frozen=True)
class BoundaryDualPoint:
    '''
    The point where r sinh d(., γ) agrees for three boundary geodesics, and that common level.
    '''
    center: HPoint
    level: float


def _v(p):
    if isinstance(p, HGeodesic):
        return p.normal
    return np.asarray(p, dtype=float)


def minkowski(a, b):
    a, b = _v(a), _v(b)
    return float(a[0] * b[0] + a[1] * b[1] - a[2] * b[2])


def lorentz_cross(a, b):
    '''A vector Minkowski-orthogonal to both a and b.'''
    return J @ np.cross(_v(a), _v(b))


def normalize_point(v, tol=DEFAULT_TOLERANCE):
    v = _v(v)
    q = minkowski(v, v)
    if not q < -tol.eps * float(v @ v):
        raise GeometryError(f"Vector {v.tolist()} is not timelike")
    v = v / math.sqrt(-q)
    return HPoint(*(v if v[2] > 0 else -v))


def normalize_geodesic(n, tol=DEFAULT_TOLERANCE):
    n = _v(n)
    q = minkowski(n, n)
    if not q > tol.eps * float(n @ n):
        raise DegenerateBisector(f"Normal {n.tolist()} is not spacelike")
    return HGeodesic(tuple(n / math.sqrt(q)))


def acosh_clamped(x, tol=DEFAULT_TOLERANCE):
    '''
    arccosh that reads arguments within tol.clamp below 1 as roundoff.
    '''
    if x < 1:
        if x < 1 - tol.clamp:
            raise GeometryError(f"arccosh argument {x} below 1")
        return 0.0
    return math.acosh(x)


def point_at(d, theta=0.0):
    '''The point at distance d from the origin in direction theta.'''
    return HPoint(math.sinh(d) * math.cos(theta), math.sinh(d) * math.sin(theta), math.cosh(d))


def boost_x(d):
    '''Translation by d along the x axis geodesic.'''
    c, s = math.cosh(d), math.sinh(d)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [s, 0.0, c]])


def rotation(theta):
    '''Rotation by theta about the origin.'''
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def apply(m, p):
    '''Applies the isometry m to a point or a geodesic.'''
    if isinstance(p, HGeodesic):
        return HGeodesic(tuple(m @ p.normal))
    return HPoint(*(m @ _v(p)))


def h_distance(p, q):
    '''
    Hyperbolic distance, from the Minkowski norm of p - q, which equals 2 sinh(d/2) and keeps its
    precision for nearby points.
    '''
    diff = _v(p) - _v(q)
    chord = minkowski(diff, diff)
    return 2 * math.asinh(math.sqrt(max(0.0, chord)) / 2)


def signed_dist_to_geodesic(q, g):
    return math.asinh(minkowski(q, g))


def geodesic_through(p, q, tol=DEFAULT_TOLERANCE):
    '''
    The geodesic through p and q, positive on the left walking from p to q.
    '''
    n = lorentz_cross(p, q)
    try:
        return normalize_geodesic(n, tol)
    except DegenerateBisector:
        raise DegenerateTriangle(f"No unique geodesic through coincident points {_v(p).tolist()}")


def project_to_geodesic(q, g, tol=DEFAULT_TOLERANCE):
    q, n = _v(q), _v(g)
    return normalize_point(q - minkowski(q, n) * n, tol)


def reflect(q, g):
    q, n = _v(q), _v(g)
    return HPoint(*(q - 2 * minkowski(q, n) * n))


def geodesic_distance(g1, g2, tol=DEFAULT_TOLERANCE):
    '''
    Length of the common perpendicular of two disjoint geodesics.
    '''
    c = abs(minkowski(g1, g2))
    if c <= 1 + tol.clamp:
        raise GeodesicsIntersect("Geodesics meet or are asymptotic")
    return math.acosh(c)


def common_perpendicular_feet(g1, g2, tol=DEFAULT_TOLERANCE):
    '''
    The feet on g1 and on g2 of the common perpendicular of two disjoint geodesics.
    '''
    geodesic_distance(g1, g2, tol)
    perpendicular = normalize_geodesic(lorentz_cross(g1, g2), tol)
    return (normalize_point(lorentz_cross(g1, perpendicular), tol),
            normalize_point(lorentz_cross(g2, perpendicular), tol))


def to_poincare(p):
    x, y, z = _v(p)
    return (x / (1 + z), y / (1 + z))


def from_poincare(u, v):
    r2 = u * u + v * v
    if r2 >= 1:
        raise GeometryError(f"({u}, {v}) lies outside the unit disk")
    return HPoint(2 * u / (1 - r2), 2 * v / (1 - r2), (1 + r2) / (1 - r2))


def to_upper_half_plane(p):
    '''The Cayley image i(1 + ζ)/(1 - ζ) of the disk point ζ of p.'''
    zeta = complex(*to_poincare(p))
    return 1j * (1 + zeta) / (1 - zeta)


def from_upper_half_plane(w):
    w = complex(w)
    if w.imag <= 0:
        raise GeometryError(f"{w} lies outside the upper half plane")
    zeta = (w - 1j) / (w + 1j)
    return from_poincare(zeta.real, zeta.imag)


def angle_opposite(a, b, c, tol=DEFAULT_TOLERANCE):
    '''
    The angle opposite side a of the hyperbolic triangle with sides a, b, c, by the half angle
    formula tan²(α/2) = sinh(s-b) sinh(s-c) / (sinh s sinh(s-a)), s the half perimeter.
    '''
    s = (a + b + c) / 2
    if min(s - a, s - b, s - c) <= tol.eps * s:
        raise InfeasibleFace(f"Sides {a}, {b}, {c} violate the triangle inequality")
    return 2 * math.atan2(math.sqrt(math.sinh(s - b) * math.sinh(s - c)),
                          math.sqrt(math.sinh(s) * math.sinh(s - a)))


def triangle_angles(a, b, c, tol=DEFAULT_TOLERANCE):
    '''Angles opposite a, b and c.'''
    return (angle_opposite(a, b, c, tol), angle_opposite(b, c, a, tol), angle_opposite(c, a, b, tol))


def triangle_area(a, b, c, tol=DEFAULT_TOLERANCE):
    return math.pi - sum(triangle_angles(a, b, c, tol))


def cosh_bisector(p1, r1, p2, r2, tol=DEFAULT_TOLERANCE, strict=True):
    '''
    The locus cosh d(q, p1)/cosh r1 = cosh d(q, p2)/cosh r2.

    It is {q : <q, m> = 0} for m = p2/cosh r2 - p1/cosh r1, and <q, m> is the first ratio minus the
    second, so the positive side is the one of p2.

    :param strict: require 0 < r < d(p1, p2) for both radii, the hypothesis under which the locus
                   separates the two points. Unweighted and shifted computations pass False.
    '''
    d = h_distance(p1, p2)
    if d <= tol.eps:
        raise DegenerateBisector("Bisector of coincident points")
    if strict and not (0 < r1 < d and 0 < r2 < d):
        raise InvalidRadii(f"Radii {r1}, {r2} must lie in (0, {d})")
    m = _v(p2) / math.cosh(r2) - _v(p1) / math.cosh(r1)
    return normalize_geodesic(m, tol)


def sinh_bisector(g1, r1, g2, r2, tol=DEFAULT_TOLERANCE):
    '''
    The locus r1 sinh d(q, g1) = r2 sinh d(q, g2) between two disjoint geodesics.

    With both normals turned toward the other geodesic, sinh d(q, g) = <q, n> between them and the
    locus is {q : <q, r1 n1 - r2 n2> = 0}, positive on the side of g2.
    '''
    if r1 <= 0 or r2 <= 0:
        raise InvalidRadii(f"Radii {r1}, {r2} must be positive")
    n1, n2 = _facing(g1, g2, tol), _facing(g2, g1, tol)
    return normalize_geodesic(r1 * n1 - r2 * n2, tol)


def _facing(g, other, tol):
    '''The normal of g turned toward the disjoint geodesic other.'''
    if abs(minkowski(g, other)) <= 1 + tol.clamp:
        raise GeodesicsIntersect("Geodesics meet or are asymptotic")
    n = _v(g)
    probe = project_to_geodesic(ORIGIN, other, tol)
    return n if minkowski(probe, n) > 0 else -n


def hyp_power_center(p, r, tol=DEFAULT_TOLERANCE, strict=True):
    '''
    The intersection of the cosh ratio bisectors of (p1, p2) and (p2, p3), the timelike direction
    orthogonal to both normals.

    :param p: three HPoints
    :param r: three radii
    :param strict: as for cosh_bisector
    :return: PowerCenterH
    '''
    p1, p2, p3 = (_v(q) for q in p)
    scale = float(np.linalg.norm(p1) * np.linalg.norm(p2) * np.linalg.norm(p3))
    if abs(float(np.linalg.det(np.array([p1, p2, p3])))) <= tol.eps * scale:
        raise DegenerateTriangle("Points lie on one geodesic")

    b12 = cosh_bisector(p1, r[0], p2, r[1], tol, strict)
    b23 = cosh_bisector(p2, r[1], p3, r[2], tol, strict)
    try:
        o = normalize_point(lorentz_cross(b12, b23), tol)
    except GeometryError:
        raise NoIntersection("Bisectors do not meet in the hyperbolic plane")

    return PowerCenterH(o, -minkowski(o, p1) / math.cosh(r[0]))


def boundary_dual_point(g, r, tol=DEFAULT_TOLERANCE):
    '''
    The point of equal level r sinh d(., γ) for three pairwise disjoint geodesics bounding a common
    region, found as the intersection of two sinh bisectors.

    :param g: three HGeodesics
    :param r: three positive weights
    :return: BoundaryDualPoint
    '''
    if min(r) <= 0:
        raise InvalidRadii(f"Weights {tuple(r)} must be positive")
    n = [_facing(g[0], g[1], tol), _facing(g[1], g[2], tol), _facing(g[2], g[0], tol)]
    for a, b in ((0, 2), (1, 0), (2, 1)):
        probe = project_to_geodesic(ORIGIN, g[b], tol)
        if minkowski(probe, n[a]) <= 0:
            raise NoIntersection("Geodesics do not bound a common region")

    b01 = sinh_bisector(g[0], r[0], g[1], r[1], tol)
    b12 = sinh_bisector(g[1], r[1], g[2], r[2], tol)
    try:
        o = normalize_point(lorentz_cross(b01, b12), tol)
    except GeometryError:
        raise NoIntersection("Sinh bisectors do not meet in the hyperbolic plane")

    level = r[0] * minkowski(o, n[0])
    if level <= 0:
        raise NoIntersection("Sinh bisectors meet outside the bounded region")
    return BoundaryDualPoint(o, level)


def trirectangle_solve(ad, bc):
    '''
    For a quadrilateral with right angles at A, B and C: cosh AB = tanh AD / tanh BC and
    cosh CD = sinh AD / sinh BC.

    :return: (AB, CD)
    '''
    if not (ad > bc > 0):
        raise InvalidSides(f"Need AD > BC > 0, got AD={ad}, BC={bc}")
    return (math.acosh(math.tanh(ad) / math.tanh(bc)), math.acosh(math.sinh(ad) / math.sinh(bc)))


def trirectangle_side(ad, cd):
    '''
    BC of the quadrilateral of trirectangle_solve from AD and CD, sinh BC = sinh AD / cosh CD. Signs
    carry through: a negative AD gives a negative BC.
    '''
    return math.asinh(math.sinh(ad) / math.cosh(cd))


def hexagon_solve(a, b, c):
    '''
    The sides alternating with a, b, c in a right-angled hexagon. The side opposite a sits between
    b and c and has cosh a' = (cosh a + cosh b cosh c) / (sinh b sinh c), and likewise cyclically.
    Any positive triple is realised, and solving twice gives the triple back.

    :return: (a', b', c')
    '''
    sides = (a, b, c)
    if not all(math.isfinite(x) and x > 0 for x in sides):
        raise InvalidHexagon(f"Hexagon sides {sides} must be positive and finite")
    try:
        ch = [math.cosh(x) for x in sides]
        sh = [math.sinh(x) for x in sides]
    except OverflowError:
        raise InvalidHexagon(f"Hexagon sides {sides} overflow")

    result = []
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        x = (ch[i] + ch[j] * ch[k]) / (sh[j] * sh[k])
        if not (math.isfinite(x) and x > 1):
            raise InvalidHexagon(f"Hexagon sides {sides} give cosh {x}")
        result.append(math.acosh(x))
    return tuple(result)
