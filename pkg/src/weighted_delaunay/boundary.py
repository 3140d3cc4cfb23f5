'''
Weighted Delaunay

Hyperbolic surfaces with geodesic boundary

Such a surface is cut by orthogeodesic seams into right-angled hexagons. Each boundary geodesic
becomes a vertex of a triangulated marked surface, each seam an edge and each hexagon a face, so the
combinatorial machinery of the closed case carries over with seam lengths in place of edge lengths.

A boundary geodesic γ_i with weight r_i claims the points q where r_i sinh d(q, γ_i) is smallest. The
dual point of a hexagon has equal level for its three boundaries. Across a seam the two dual points
are measured against the seam geodesic, positive toward their own hexagon, and the seam passes when
the sum is non-negative. A hexagon without a dual point has one boundary claiming a whole bisector,
and its height over the seam of the other two is infinite. That condition is inferred from the
duality and every report produced here says so.

Hexagon chart: for seams (s_ij, s_jk, s_ki) the seam ij runs along the x axis from the origin, on γ_i,
to distance s_ij, on γ_j. The hexagon lies in y > 0 and every boundary normal points inward.
'''
# Python imports
import math

from dataclasses import dataclass

# Package imports
import numpy as np

from . import hyperbolic as hyp
from .delaunay import (DualComplex, DualVertex, EdgeCertificate, certify_global, classify, drive, dual_faces,
                       edge_status, weight_values)
from .errors import InvalidHexagon, NonConvexHinge, SwitchLimitExceeded, UncertifiedMesh
from .logs import logger as log
from .mesh import DeltaTriangulation, geometry
from .options import DEFAULT_TOLERANCE

SEAM = hyp.HGeodesic((0.0, 1.0, 0.0))


class TruncatedTriangulation(DeltaTriangulation):
    '''
    A triangulated marked surface standing for a hyperbolic surface with geodesic boundary. Vertices
    are boundary geodesics, edge lengths are seam lengths.
    '''

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.geometry = geometry.boundary

    @property
    def seam_lengths(self):
        return self.edge_lengths

    def validate(self):
        super().validate()
        for f in range(self.face_count):
            try:
                hyp.hexagon_solve(*self.face_lengths(f))
            except InvalidHexagon as e:
                raise InvalidHexagon(f"Face {f}: {e}")

    def hexagon(self, h, tol=DEFAULT_TOLERANCE):
        '''The chart of the hexagon of halfedge h, with h as its base seam.'''
        return hexagon_from_seams(self.length(h), self.length(self.next[h]), self.length(self.prev(h)), tol)


@dataclass
class HexagonChart:
    '''
    A right-angled hexagon in its canonical chart.

    seams are (s_ij, s_jk, s_ki), arcs (b_i, b_j, b_k) with b_i the part of γ_i between seams ki and ij.
    normals are the inward HGeodesics of γ_i, γ_j, γ_k. feet maps a seam and a boundary, as 'ij:i', to
    the point where they meet.
    '''
    seams: tuple
    arcs: tuple
    normals: tuple
    feet: dict

    def dual_point(self, r, tol=DEFAULT_TOLERANCE):
        '''The point of equal level r_α sinh d(., γ_α), r in the order (i, j, k).'''
        return hyp.boundary_dual_point(self.normals, r, tol)

    def foot_offsets(self, point):
        '''
        Where the feet of point on γ_i and γ_j sit along those boundaries, measured from the seam ij
        toward the hexagon. Each foot, the seam's end, the foot on the seam and point make a
        quadrilateral with three right angles, so sinh offset = sinh h / cosh d, h the height of
        point over the seam and d its distance to the boundary.
        '''
        h = hyp.signed_dist_to_geodesic(point, SEAM)
        return tuple(hyp.trirectangle_side(h, hyp.signed_dist_to_geodesic(point, n)) for n in self.normals[:2])


def hexagon_from_seams(s_ij, s_jk, s_ki, tol=DEFAULT_TOLERANCE):
    '''
    Realises the right-angled hexagon with alternate sides s_ij, s_jk, s_ki in its canonical chart.

    :return: HexagonChart
    '''
    b_i, b_j, b_k = hyp.hexagon_solve(s_jk, s_ki, s_ij)

    n_i = np.array([1.0, 0.0, 0.0])
    n_j = -np.array([math.cosh(s_ij), 0.0, math.sinh(s_ij)])
    a = np.array([0.0, math.sinh(b_i), math.cosh(b_i)])
    c = math.cosh(s_ki) * a + math.sinh(s_ki) * n_i
    n_k = -(math.sinh(s_ki) * a + math.cosh(s_ki) * n_i)
    r = np.array([math.sinh(s_ij) * math.cosh(b_j), math.sinh(b_j), math.cosh(s_ij) * math.cosh(b_j)])
    g_k = hyp.HGeodesic(tuple(n_k))

    feet = {'ij:i': hyp.ORIGIN,
            'ij:j': hyp.point_at(s_ij),
            'ki:i': hyp.HPoint(*a),
            'ki:k': hyp.HPoint(*c),
            'jk:j': hyp.HPoint(*r),
            'jk:k': hyp.project_to_geodesic(r, g_k, tol)}
    normals = (hyp.HGeodesic(tuple(n_i)), hyp.HGeodesic(tuple(n_j)), g_k)
    return HexagonChart((s_ij, s_jk, s_ki), (b_i, b_j, b_k), normals, feet)


def boundary_lengths(tt):
    '''
    The length of every boundary geodesic, the sum of its arcs over all hexagons.
    '''
    lengths = np.zeros(tt.vertex_count)
    for h in range(tt.halfedge_count):
        arc, _, _ = hyp.hexagon_solve(tt.length(tt.next[h]), tt.length(tt.prev(h)), tt.length(h))
        lengths[tt.vertex[h]] += arc
    return lengths


def _dual_height(tt, h, r, tol):
    '''The dual point of the hexagon of h in h's chart and its signed height over the seam of h.'''
    chart = tt.hexagon(h, tol)
    labels = (tt.vertex[h], tt.head(h), tt.vertex[tt.prev(h)])
    point = chart.dual_point([r[v] for v in labels], tol)
    return point, hyp.signed_dist_to_geodesic(point.center, SEAM)


def seam_height(chart, r, tol=DEFAULT_TOLERANCE):
    '''
    The signed height over the base seam of the point where the third boundary starts to tie on the
    sinh bisector of the first two, r in the order (i, j, k).

    That bisector crosses the seam once, at x. Along it, walking away from the seam into the hexagon,
    q(t) = cosh t x + sinh t u and the level difference r_i sinh d(q, γ_i) - r_k sinh d(q, γ_k) is
    A cosh t + B sinh t. Its root is the dual point. Without a root the third boundary claims the whole
    bisector, height -inf, or none of it, height +inf.
    '''
    n_i, n_k = np.array(chart.normals[0].normal), np.array(chart.normals[2].normal)
    b = hyp.sinh_bisector(chart.normals[0], r[0], chart.normals[1], r[1], tol)
    x = np.array(hyp.normalize_point(hyp.lorentz_cross(b, SEAM), tol))
    u = hyp.lorentz_cross(b, x)
    u = u / math.sqrt(hyp.minkowski(u, u))
    if hyp.minkowski(u, SEAM) < 0:
        u = -u

    m = r[0] * n_i - r[2] * n_k
    A, B = hyp.minkowski(x, m), hyp.minkowski(u, m)
    if abs(B) > abs(A):
        t = math.atanh(-A / B)
        return math.asinh(math.sinh(t) * hyp.minkowski(u, SEAM))
    return -math.inf if A > 0 else math.inf


def _seam_height(tt, h, r, tol):
    chart = tt.hexagon(h, tol)
    labels = (tt.vertex[h], tt.head(h), tt.vertex[tt.prev(h)])
    return seam_height(chart, [r[v] for v in labels], tol)


def hinge_certificate_boundary(tt, weights, edge, tol=DEFAULT_TOLERANCE):
    '''
    Certifies one seam from the heights of the two neighbouring dual points over it. A hexagon whose
    dual point does not exist contributes an infinite height, so the seam is plainly Delaunay or
    plainly violated.

    :return: EdgeCertificate
    '''
    r = weight_values(weights)
    h = tt.edge_halfedge[edge]
    t = tt.twin[h]
    h_k = _seam_height(tt, h, r, tol)
    if tt.face[h] == tt.face[t]:
        return EdgeCertificate(edge, h_k, h_k, 2 * h_k, edge_status.self_glued)

    h_l = _seam_height(tt, t, r, tol)
    margin = h_k + h_l
    if math.isnan(margin):
        margin = -math.inf
    diameter = max(tt.length(x) for x in (h, tt.next[h], tt.prev(h), tt.next[t], tt.prev(t)))
    return EdgeCertificate(edge, h_k, h_l, margin, classify(margin, diameter, tol))


def joint_chart(tt, edge, tol=DEFAULT_TOLERANCE):
    '''
    Both hexagons around a seam in the chart of the first: the second is turned half way round the
    seam's midpoint, so its base seam lands on the first's reversed and its interior in y < 0.

    :return: (chart of the first, chart of the second, the isometry carrying the second's chart over)
    '''
    h = tt.edge_halfedge[edge]
    first, second = tt.hexagon(h, tol), tt.hexagon(tt.twin[h], tol)
    s = tt.length(h)
    turn = hyp.boost_x(s / 2) @ hyp.rotation(math.pi) @ hyp.boost_x(-s / 2)
    return first, second, turn


def switch_seam(tt, edge, tol=DEFAULT_TOLERANCE):
    '''
    Replaces a seam by the other diagonal of the right-angled octagon its two hexagons form, the
    common perpendicular of the two far boundaries.

    :return: the new seam length
    '''
    if tt.is_self_glued(edge):
        raise NonConvexHinge(f"Seam {edge} is self glued", edge=edge)
    first, second, turn = joint_chart(tt, edge, tol)
    far = hyp.apply(turn, second.normals[2])
    new_length = hyp.geodesic_distance(first.normals[2], far, tol)
    log.debug(f"switch seam {edge}: {tt.edge_lengths[edge]} -> {new_length}")
    tt.flip(tt.edge_halfedge[edge], new_length)
    return new_length


def switch_to_delaunay(tt, weights, cap=None, tol=DEFAULT_TOLERANCE, on_switch=None):
    '''
    Switches seams, in place, until every seam passes.

    :return: FlipReport with inferred set
    '''
    return drive(tt, weight_values(weights), hinge_certificate_boundary, switch_seam, cap, tol, on_switch,
                 limit_error=SwitchLimitExceeded, inferred=True)


def extract_boundary_dual(tt, weights, tol=DEFAULT_TOLERANCE):
    '''
    The weighted Voronoi decomposition of a certified truncated triangulation. Each dual vertex lives
    in the chart of its face's first halfedge; its feet are the offsets along each of the face's three
    boundary arcs, measured from the seam that leaves that boundary in face order.

    :return: DualComplex
    '''
    r = weight_values(weights)
    certified, violations = certify_global(tt, r, tol)
    if not certified:
        raise UncertifiedMesh(f"{len(violations)} seams are not weighted Delaunay", violations)

    vertices = []
    for f in range(tt.face_count):
        feet = []
        for h in tt.face_halfedges(f):
            point, _ = _dual_height(tt, h, r, tol)
            feet.append(tt.hexagon(h, tol).foot_offsets(point.center)[0])
        point, _ = _dual_height(tt, tt.face_halfedge[f], r, tol)
        vertices.append(DualVertex(f, tuple(point.center), point.level, feet=feet))

    edges = [(e, hinge_certificate_boundary(tt, r, e, tol).margin) for e in range(tt.edge_count)]
    return DualComplex(tt.geometry, vertices, edges, dual_faces(tt))
