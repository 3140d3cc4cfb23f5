'''
Weighted Delaunay

The weighted Delaunay engine

An edge is locally weighted Delaunay when, in its unfolded hinge, the power centers of the two faces
sit at signed heights h_k, h_l over the edge (positive toward each face's own third vertex) with
h_k + h_l >= 0. A triangulation whose edges all pass is the weighted Delaunay triangulation, unique up
to switching diagonals across edges where the sum is exactly zero.

Here lives the per edge certificate, the flip driver, global certification, the tie-free
tessellation hash and extraction of the dual weighted Voronoi complex. Surfaces with geodesic boundary
plug their own certificate and seam switch into the same driver (see boundary).
'''
# Python imports
import hashlib
import math

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

# Package imports
import numpy as np

from . import hyperbolic as hyp
from .errors import (FlipLimitExceeded, GeometryError, NoIntersection, NonConvexHinge, PowerCenterInfeasible,
                     UncertifiedMesh)
from .euclid import WeightedPoint, power_center, signed_height
from .logs import logger as log
from .mesh import angle_opposite, face_chart, flip_edge, geometry, total_area, unfold_hinge
from .options import DEFAULT_TOLERANCE, flip_options


class edge_status():
    '''What a certificate says about an edge.

        delaunay    - margin above the tie tolerance
        tie         - margin within it, the two diagonals are equally good
        violated    - margin below it, the edge should be flipped
        self_glued  - both sides of the edge lie in one face, locally Delaunay by symmetry
    '''
    delaunay = 'delaunay'
    tie = 'tie'
    violated = 'violated'
    self_glued = 'self_glued'


PASSING = (edge_status.delaunay, edge_status.tie, edge_status.self_glued)


@dataclass(frozen=True)
class EdgeCertificate:
    edge: int
    h_k: float
    h_l: float
    margin: float
    status: str

    def as_dict(self):
        # boundary hexagons without a dual point give infinite heights, written as null
        finite = {k: (v if math.isfinite(v) else None) for k, v in
                  (('h_k', self.h_k), ('h_l', self.h_l), ('margin', self.margin))}
        return {'edge': self.edge, **finite, 'status': self.status}


@dataclass
class WeightVector:
    '''
    Per vertex weights. On a flat surface these are squared radii w_i, on a hyperbolic or boundary
    surface radii r_i.
    '''
    values: np.ndarray
    geometry: str = geometry.flat

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)

    @property
    def radii(self):
        return np.sqrt(self.values) if self.geometry == geometry.flat else self.values


def weight_values(weights):
    if isinstance(weights, WeightVector):
        return weights.values
    return np.asarray(weights, dtype=float)


def classify(margin, diameter, tol):
    allowance = tol.tie * diameter
    if margin > allowance:
        return edge_status.delaunay
    elif margin >= -allowance:
        return edge_status.tie
    return edge_status.violated


def _flat_heights(chart, w, self_glued, tol):
    i, j, k, l = chart.labels
    pi, pj = WeightedPoint.of(chart.i, w[i]), WeightedPoint.of(chart.j, w[j])
    ok = power_center(pi, pj, WeightedPoint.of(chart.k, w[k]), tol)
    h_k = signed_height(ok.center, (chart.i, chart.j), chart.k, tol)
    if self_glued:
        return h_k, h_k
    ol = power_center(pi, pj, WeightedPoint.of(chart.l, w[l]), tol)
    return h_k, signed_height(ol.center, (chart.i, chart.j), chart.l, tol)


def _hyperbolic_heights(chart, r, self_glued, tol):
    i, j, k, l = chart.labels
    base = hyp.geodesic_through(chart.i, chart.j, tol)
    try:
        ok = hyp.hyp_power_center((chart.i, chart.j, chart.k), (r[i], r[j], r[k]), tol, strict=False)
        h_k = hyp.signed_dist_to_geodesic(ok.center, base)
        if self_glued:
            return h_k, h_k
        ol = hyp.hyp_power_center((chart.i, chart.j, chart.l), (r[i], r[j], r[l]), tol, strict=False)
    except NoIntersection:
        raise PowerCenterInfeasible(f"Power center of a face at edge {chart.edge} lies outside the plane",
                                    edge=chart.edge)
    return h_k, -hyp.signed_dist_to_geodesic(ol.center, base)


def edge_certificate(mesh, weights, edge, tol=DEFAULT_TOLERANCE):
    '''
    Certifies one edge: unfold its hinge, find both power centers in that chart and measure their
    signed heights over the edge.

    :return: EdgeCertificate
    '''
    if mesh.geometry == geometry.boundary:
        from .boundary import hinge_certificate_boundary
        return hinge_certificate_boundary(mesh, weights, edge, tol)

    w = weight_values(weights)
    chart = unfold_hinge(mesh, edge, tol)
    if mesh.geometry == geometry.hyperbolic:
        h_k, h_l = _hyperbolic_heights(chart, w, chart.self_glued, tol)
    else:
        h_k, h_l = _flat_heights(chart, w, chart.self_glued, tol)

    margin = h_k + h_l
    status = edge_status.self_glued if chart.self_glued else classify(margin, chart.diameter, tol)
    return EdgeCertificate(edge, h_k, h_l, margin, status)


def classic_margin(mesh, edge, tol=DEFAULT_TOLERANCE):
    '''
    The unweighted flat test R_k cos α_k + R_l cos α_l = l_ij (cot α_k + cot α_l) / 2, α_k and α_l
    the angles opposite the edge.
    '''
    chart = unfold_hinge(mesh, edge, tol)
    s = chart.lengths
    alpha_k = angle_opposite(mesh, s['ij'], s['jk'], s['ki'], tol)
    alpha_l = angle_opposite(mesh, s['ij'], s['il'], s['lj'], tol)
    return s['ij'] / 2 * (1 / math.tan(alpha_k) + 1 / math.tan(alpha_l))


@dataclass
class FlipReport:
    '''
    What a run of the flip (or seam switch) driver did and where it left the surface.

    inferred is set for surfaces with geodesic boundary, whose local condition is a reconstruction
    from the duality rather than a stated inequality.
    '''
    flips: int
    certificates: list
    edge_lengths: np.ndarray
    geometry: str
    inferred: bool = False

    @property
    def violations(self):
        return [c for c in self.certificates if c.status not in PASSING]

    @property
    def certified(self):
        return not self.violations

    def counts(self):
        result = {s: 0 for s in (edge_status.delaunay, edge_status.tie, edge_status.violated, edge_status.self_glued)}
        for c in self.certificates:
            result[c.status] += 1
        return result

    def as_dict(self):
        return {'flips': self.flips,
                'geometry': self.geometry,
                'inferred_condition': self.inferred,
                'certified': self.certified,
                'counts': self.counts(),
                'certificates': [c.as_dict() for c in self.certificates],
                'edge_lengths': [float(x) for x in self.edge_lengths]}


def drive(mesh, weights, certify, flip, cap=None, tol=DEFAULT_TOLERANCE, on_flip=None,
          limit_error=FlipLimitExceeded, inferred=False):
    '''
    Flips violated edges until none is left.

    A FIFO queue starts with every edge. A violated edge is flipped and the four edges around its hinge
    are queued again. When the queue runs dry every edge is certified once more and anything still
    violated goes back in. Ties are never flipped.

    :param certify: certify(mesh, weights, edge, tol) -> EdgeCertificate
    :param flip: flip(mesh, edge, tol), mutating mesh
    :param cap: most flips allowed, None for 50·E²
    :param on_flip: called as on_flip(mesh, edge, certificate) after every flip
    '''
    E = mesh.edge_count
    limit = flip_options(cap).limit(E)
    queue, queued = deque(range(E)), [True] * E
    flips = 0

    while True:
        while queue:
            e = queue.popleft()
            queued[e] = False
            cert = certify(mesh, weights, e, tol)
            if cert.status != edge_status.violated:
                continue
            if flips >= limit:
                raise limit_error(f"Gave up after {flips} flips on {mesh.name or 'surface'}", flips=flips, cap=limit)

            around = mesh.hinge_edges(e)
            try:
                flip(mesh, e, tol)
            except NonConvexHinge as err:
                raise NonConvexHinge(f"Violated edge {e} (margin {cert.margin}) cannot be flipped: {err}",
                                     edge=e, margin=cert.margin)
            flips += 1
            log.debug(f"flipped edge {e} with margin {cert.margin}")
            if on_flip is not None:
                on_flip(mesh, e, cert)
            for a in around:
                if not queued[a]:
                    queue.append(a)
                    queued[a] = True

        certificates = [certify(mesh, weights, e, tol) for e in range(E)]
        pending = [c.edge for c in certificates if c.status == edge_status.violated]
        if not pending:
            break
        for e in pending:
            queue.append(e)
            queued[e] = True

    log.info(f"{mesh.name or 'surface'}: {flips} flips")
    return FlipReport(flips, certificates, mesh.edge_lengths.copy(), mesh.geometry, inferred)


def flip_to_delaunay(mesh, weights, cap=None, tol=DEFAULT_TOLERANCE, on_flip=None):
    '''
    Flips mesh, in place, to the weighted Delaunay triangulation of weights.

    :return: FlipReport
    '''
    if mesh.geometry == geometry.boundary:
        from .boundary import switch_to_delaunay
        return switch_to_delaunay(mesh, weights, cap, tol, on_flip)

    w = weight_values(weights)
    return drive(mesh, w, edge_certificate, flip_edge, cap, tol, on_flip)


def certify_global(mesh, weights, tol=DEFAULT_TOLERANCE):
    '''
    :return: (True when every edge is delaunay, tie or self glued, the violated certificates)
    '''
    w = weight_values(weights)
    violations = [c for c in (edge_certificate(mesh, w, e, tol) for e in range(mesh.edge_count))
                  if c.status not in PASSING]
    return not violations, violations


def _hash_scale(mesh, tol):
    if mesh.geometry == geometry.boundary:
        from .boundary import boundary_lengths
        return float(sum(boundary_lengths(mesh)))
    return math.sqrt(total_area(mesh, tol))


def _polygons(mesh, removed, tol):
    '''
    Walks the faces of the complex left once the edges in removed are erased, each as the cyclic list
    of (vertex, quantised length) along its boundary, rotated to its least form.
    '''
    scale = _hash_scale(mesh, tol) or 1.0
    factor = 10 ** tol.digits

    def quantise(h):
        return int(round(mesh.length(h) / scale * factor))

    seen, polygons = set(), []
    for start in range(mesh.halfedge_count):
        if start in seen or mesh.edge[start] in removed:
            continue
        cycle, h = [], start
        while True:
            seen.add(h)
            cycle.append((mesh.vertex[h], quantise(h)))
            n, steps = mesh.next[h], 0
            while mesh.edge[n] in removed:
                n = mesh.next[mesh.twin[n]]
                steps += 1
                if steps > mesh.halfedge_count:
                    raise GeometryError(f"Erased edges enclose vertex {mesh.vertex[n]}")
            h = n
            if h == start:
                break
            if len(cycle) > mesh.halfedge_count:
                raise GeometryError("Polygon walk does not close")
        polygons.append(min(tuple(cycle[i:] + cycle[:i]) for i in range(len(cycle))))
    return sorted(polygons)


def _digest(mesh, polygons):
    text = repr((mesh.geometry, mesh.vertex_count, polygons))
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


def triangulation_hash(mesh, tol=DEFAULT_TOLERANCE):
    '''
    Hash of the triangulation itself: faces as cyclic (vertex, length) sequences, lengths rounded
    relative to the surface's scale.
    '''
    return _digest(mesh, _polygons(mesh, set(), tol))


def canonical_tessellation(mesh, weights, tol=DEFAULT_TOLERANCE, certificates=None):
    '''
    Hash of the weighted Delaunay tessellation: tie edges are erased and the remaining polygons hashed,
    so triangulations that differ by switches across ties hash alike.

    :param certificates: certificates of the current edges, recomputed when omitted
    '''
    if certificates is None:
        certificates = [edge_certificate(mesh, weights, e, tol) for e in range(mesh.edge_count)]
    removed = {c.edge for c in certificates if c.status == edge_status.tie}
    return _digest(mesh, _polygons(mesh, removed, tol))


@dataclass
class DualVertex:
    '''
    The power center of a face in that face's own chart (see mesh.face_chart). power is w_ijk on a flat
    surface and the common cosh ratio on a hyperbolic one.
    '''
    face: int
    center: tuple
    power: float
    dual_radius: Optional[float] = None
    feet: Optional[list] = None

    def as_dict(self):
        d = {'face': self.face, 'center': [float(x) for x in self.center], 'power': float(self.power)}
        if self.dual_radius is not None:
            d['dual_radius'] = float(self.dual_radius)
        if self.feet is not None:
            d['feet'] = [float(x) for x in self.feet]
        return d


@dataclass
class DualComplex:
    '''
    The weighted Voronoi decomposition as the CW complex dual to the triangulation: a vertex per face,
    an edge per edge (of length h_k + h_l) and a face per vertex, the cycle of faces around it.
    '''
    geometry: str
    vertices: list
    edges: list
    faces: list = field(default_factory=list)

    def as_dict(self):
        return {'geometry': self.geometry,
                'dual_vertices': [v.as_dict() for v in self.vertices],
                'dual_edges': [[int(e), float(length)] for e, length in self.edges],
                'dual_faces': [list(map(int, cycle)) for cycle in self.faces]}


def dual_faces(mesh):
    return [[mesh.face[h] for h in mesh.outgoing(v)] for v in range(mesh.vertex_count)]


def extract_dual(mesh, weights, tol=DEFAULT_TOLERANCE):
    '''
    The weighted Voronoi decomposition of a certified triangulation.

    :return: DualComplex
    '''
    if mesh.geometry == geometry.boundary:
        from .boundary import extract_boundary_dual
        return extract_boundary_dual(mesh, weights, tol)

    w = weight_values(weights)
    certified, violations = certify_global(mesh, w, tol)
    if not certified:
        raise UncertifiedMesh(f"{len(violations)} edges are not weighted Delaunay", violations)

    vertices = []
    for f in range(mesh.face_count):
        a, b, c = face_chart(mesh, f, tol)
        labels = mesh.face_vertices(f)
        if mesh.geometry == geometry.hyperbolic:
            try:
                pc = hyp.hyp_power_center((a, b, c), [w[v] for v in labels], tol, strict=False)
            except NoIntersection:
                raise PowerCenterInfeasible(f"Power center of face {f} lies outside the plane")
            vertices.append(DualVertex(f, tuple(pc.center), pc.ratio, pc.dual_radius))
        else:
            pc = power_center(*(WeightedPoint.of(p, w[v]) for p, v in zip((a, b, c), labels)), tol=tol)
            vertices.append(DualVertex(f, tuple(pc.center), pc.power))

    edges = [(e, edge_certificate(mesh, w, e, tol).margin) for e in range(mesh.edge_count)]
    return DualComplex(mesh.geometry, vertices, edges, dual_faces(mesh))
