'''
Weighted Delaunay

Intrinsic surfaces

A surface is a Δ-complex (a triangle may be glued to itself along edges and at vertices) with a
positive length on every edge, flat or hyperbolic. Nothing is ever embedded: hinges are unfolded into
a chart on demand.

Connectivity is a halfedge structure kept in plain arrays. Halfedge h runs from vertex[h] to
vertex[next[h]], lies in face[h], belongs to edge[h] and twin[h] runs the other way along the same
edge. Halfedges and edges keep their ids through flips.

JSON format:

    {"geometry": "flat" | "hyperbolic" | "boundary",
     "faces": [[i, j, k], ...],
     "gluing": [[[f, c], [f, c]], ...],
     "edge_lengths": [...],          ("seam_lengths" when geometry is boundary)
     "weights": [...],               optional
     "name": "..."}                  optional

Corner c of face f is the halfedge from faces[f][c] to faces[f][(c + 1) % 3]; gluing entry e pairs
the two halfedges of edge e.
'''
# Python imports
import copy
import math

from dataclasses import dataclass

# Package imports
import numpy as np

from . import hyperbolic as hyp
from .errors import GeometryError, InfeasibleFace, MeshFormatError, NonConvexHinge, NonpositiveWeight
from .euclid import cross2
from .logs import logger as log
from .options import DEFAULT_TOLERANCE


class geometry():
    '''The metric a surface carries.'''
    flat = 'flat'
    hyperbolic = 'hyperbolic'
    boundary = 'boundary'


class weight_class():
    '''Classification of a weight vector against the current edges, strongest first.

        surrogate   - weight circles pairwise disjoint along every edge
        admissible  - every edge satisfies the vertex-weight domain inequality
        rejected    - some edge fails it
    '''
    surrogate = 'surrogate'
    admissible = 'edge-admissible'
    rejected = 'rejected'


class DeltaTriangulation:
    '''
    A closed oriented Δ-complex with edge lengths.
    '''

    def __init__(self, vertex, twin, next, face, edge, edge_lengths, geometry=geometry.flat, name=None):
        self.vertex = list(vertex)
        self.twin = list(twin)
        self.next = list(next)
        self.face = list(face)
        self.edge = list(edge)
        self.edge_lengths = np.asarray(edge_lengths, dtype=float).copy()
        self.geometry = geometry
        self.name = name

        self.face_halfedge = [None] * (max(self.face) + 1 if self.face else 0)
        for h, f in enumerate(self.face):
            if self.face_halfedge[f] is None:
                self.face_halfedge[f] = h
        self.edge_halfedge = [None] * len(self.edge_lengths)
        for h, e in enumerate(self.edge):
            if self.edge_halfedge[e] is None:
                self.edge_halfedge[e] = h
        self.vertex_halfedge = [None] * (max(self.vertex) + 1 if self.vertex else 0)
        for h, v in enumerate(self.vertex):
            if self.vertex_halfedge[v] is None:
                self.vertex_halfedge[v] = h

    @classmethod
    def from_faces(cls, faces, gluing, edge_lengths, geometry=geometry.flat, name=None):
        '''
        Builds a surface from vertex labelled faces and an explicit gluing of corners.

        :param faces: [[i, j, k], ...]
        :param gluing: one [[f, c], [f, c]] per edge, pairing two corners
        :param edge_lengths: one length per gluing entry
        '''
        faces = [list(map(int, f)) for f in faces]
        if not faces or any(len(f) != 3 for f in faces):
            raise MeshFormatError("Every face needs exactly three vertices")
        if min(min(f) for f in faces) < 0:
            raise MeshFormatError("Vertex labels must be non-negative")
        if len(gluing) != len(edge_lengths):
            raise MeshFormatError(f"{len(gluing)} glued edges but {len(edge_lengths)} lengths")

        H = 3 * len(faces)
        vertex = [faces[h // 3][h % 3] for h in range(H)]
        next = [3 * (h // 3) + (h % 3 + 1) % 3 for h in range(H)]
        face = [h // 3 for h in range(H)]
        twin = [None] * H
        edge = [None] * H

        for e, pair in enumerate(gluing):
            try:
                (f0, c0), (f1, c1) = [(int(f), int(c)) for f, c in pair]
            except (TypeError, ValueError):
                raise MeshFormatError(f"Malformed gluing entry {pair}")
            if not (0 <= f0 < len(faces) and 0 <= f1 < len(faces) and 0 <= c0 < 3 and 0 <= c1 < 3):
                raise MeshFormatError(f"Gluing entry {pair} names a missing corner")
            h0, h1 = 3 * f0 + c0, 3 * f1 + c1
            for h in (h0, h1):
                if twin[h] is not None:
                    raise MeshFormatError(f"Gluing entry {pair} reuses a corner")
            if h0 == h1:
                raise MeshFormatError(f"Gluing entry {pair} glues a corner to itself")
            twin[h0], twin[h1] = h1, h0
            edge[h0] = edge[h1] = e

        if any(t is None for t in twin):
            raise MeshFormatError("Surface has unglued corners, only closed surfaces are supported")

        mesh = cls(vertex, twin, next, face, edge, edge_lengths, geometry, name)
        mesh.validate()
        return mesh

    @classmethod
    def from_triangles(cls, triangles, length, geometry=geometry.flat, name=None):
        '''
        Builds a simplicial surface, gluing halfedges with matching endpoints.

        :param triangles: consistently oriented [[i, j, k], ...]
        :param length: function of two vertex ids giving their edge length
        '''
        corners = {}
        for f, tri in enumerate(triangles):
            for c in range(3):
                key = (int(tri[c]), int(tri[(c + 1) % 3]))
                if key in corners:
                    raise MeshFormatError(f"Directed edge {key} used twice, faces are not consistently oriented")
                corners[key] = (f, c)

        gluing, lengths = [], []
        for (a, b), corner in sorted(corners.items()):
            if (b, a) not in corners:
                raise MeshFormatError(f"Edge {(a, b)} lies on a boundary, only closed surfaces are supported")
            if a < b:
                gluing.append([list(corner), list(corners[(b, a)])])
                lengths.append(length(a, b))
        return cls.from_faces(triangles, gluing, lengths, geometry, name)

    def copy(self):
        return copy.deepcopy(self)

    @property
    def halfedge_count(self):
        return len(self.vertex)

    @property
    def vertex_count(self):
        return len(self.vertex_halfedge)

    @property
    def edge_count(self):
        return len(self.edge_lengths)

    @property
    def face_count(self):
        return len(self.face_halfedge)

    def euler_characteristic(self):
        return self.vertex_count - self.edge_count + self.face_count

    def head(self, h):
        return self.vertex[self.next[h]]

    def prev(self, h):
        return self.next[self.next[h]]

    def length(self, h):
        return float(self.edge_lengths[self.edge[h]])

    def face_halfedges(self, f):
        h = self.face_halfedge[f]
        return (h, self.next[h], self.next[self.next[h]])

    def face_vertices(self, f):
        return tuple(self.vertex[h] for h in self.face_halfedges(f))

    def face_lengths(self, f):
        return tuple(self.length(h) for h in self.face_halfedges(f))

    def edge_vertices(self, e):
        h = self.edge_halfedge[e]
        return self.vertex[h], self.head(h)

    def is_self_glued(self, e):
        h = self.edge_halfedge[e]
        return self.face[h] == self.face[self.twin[h]]

    def outgoing(self, v):
        '''
        The halfedges leaving v in rotation order. A vertex met several times in one face shows up
        once per corner.
        '''
        start = h = self.vertex_halfedge[v]
        result = []
        while True:
            result.append(h)
            h = self.twin[self.prev(h)]
            if h == start:
                return result
            if len(result) > self.halfedge_count:
                raise MeshFormatError(f"Rotation about vertex {v} does not close")

    def hinge_edges(self, e):
        '''The four edges bounding the hinge of e.'''
        h = self.edge_halfedge[e]
        t = self.twin[h]
        return [self.edge[x] for x in (self.next[h], self.prev(h), self.next[t], self.prev(t))]

    def validate(self):
        '''
        Checks the halfedge structure, the vertex labels against the gluing, the edge lengths and
        every face's triangle inequality.
        '''
        H = self.halfedge_count
        for h in range(H):
            t = self.twin[h]
            if self.twin[t] != h or t == h:
                raise MeshFormatError(f"Twin of halfedge {h} is inconsistent")
            if self.edge[t] != self.edge[h]:
                raise MeshFormatError(f"Halfedges {h} and {t} are twins on different edges")
            if self.vertex[h] != self.head(t):
                raise MeshFormatError(f"Halfedge {h} starts at {self.vertex[h]} but its twin ends at {self.head(t)}")
            if self.next[self.next[self.next[h]]] != h:
                raise MeshFormatError(f"Face loop through halfedge {h} is not a triangle")
            if self.face[self.next[h]] != self.face[h]:
                raise MeshFormatError(f"Face loop through halfedge {h} changes face")

        if None in self.vertex_halfedge:
            raise MeshFormatError("Vertex labels are not contiguous")
        seen = set()
        for v in range(self.vertex_count):
            orbit = self.outgoing(v)
            if any(self.vertex[h] != v for h in orbit):
                raise MeshFormatError(f"Vertex {v} is glued to a differently labelled corner")
            seen.update(orbit)
        if len(seen) != H:
            raise MeshFormatError("Some vertex label stands for several vertices of the glued surface")

        if not np.all(np.isfinite(self.edge_lengths)) or np.any(self.edge_lengths <= 0):
            raise MeshFormatError("Edge lengths must be positive and finite")

        if self.geometry in (geometry.flat, geometry.hyperbolic):
            for f in range(self.face_count):
                corner_angles(self, f)

    def flip(self, h, new_length):
        '''
        Combinatorial flip of the edge of h: with h = i→j in face (i, j, k) and its twin in (j, i, l),
        the faces become (k, i, l) and (l, j, k) and the edge now joins l to k. No geometry is checked.
        '''
        h1, t = self.next[h], self.twin[h]
        h2, t1 = self.next[h1], self.next[t]
        t2 = self.next[t1]
        f0, f1 = self.face[h], self.face[t]
        if f0 == f1:
            raise NonConvexHinge(f"Edge {self.edge[h]} is self glued", edge=self.edge[h])
        i, j, k, l = self.vertex[h], self.vertex[t], self.vertex[h2], self.vertex[t2]

        self.vertex[h], self.vertex[t] = l, k
        self.next[h2], self.next[t1], self.next[h] = t1, h, h2
        self.next[t2], self.next[h1], self.next[t] = h1, t, t2
        self.face[t1], self.face[h1] = f0, f1
        self.face_halfedge[f0], self.face_halfedge[f1] = h, t
        self.vertex_halfedge[i], self.vertex_halfedge[j] = t1, h1
        self.vertex_halfedge[k], self.vertex_halfedge[l] = h2, t2
        self.edge_lengths[self.edge[h]] = new_length

    def to_json(self, weights=None):
        '''
        The canonical JSON form of the current triangulation.
        '''
        faces, corner = [], {}
        for f in range(self.face_count):
            hs = self.face_halfedges(f)
            faces.append([self.vertex[h] for h in hs])
            for c, h in enumerate(hs):
                corner[h] = [f, c]
        gluing = []
        for e in range(self.edge_count):
            h = self.edge_halfedge[e]
            gluing.append([corner[h], corner[self.twin[h]]])

        data = {'geometry': self.geometry, 'faces': faces, 'gluing': gluing}
        key = 'seam_lengths' if self.geometry == geometry.boundary else 'edge_lengths'
        data[key] = [float(x) for x in self.edge_lengths]
        if weights is not None:
            data['weights'] = [float(x) for x in weights]
        if self.name:
            data['name'] = self.name
        return data

    def __repr__(self):
        return (f"<{type(self).__name__} {self.name or ''} {self.geometry} "
                f"V={self.vertex_count} E={self.edge_count} F={self.face_count}>")


def mesh_from_json(data):
    '''
    Reads a surface in the canonical JSON format.

    :return: (mesh, weights or None)
    '''
    if not isinstance(data, dict):
        raise MeshFormatError("A surface is a JSON object")
    geom = data.get('geometry')
    try:
        if geom == geometry.boundary:
            from .boundary import TruncatedTriangulation
            mesh = TruncatedTriangulation.from_faces(data['faces'], data['gluing'], data['seam_lengths'],
                                                     geom, data.get('name'))
        elif geom in (geometry.flat, geometry.hyperbolic):
            mesh = DeltaTriangulation.from_faces(data['faces'], data['gluing'], data['edge_lengths'],
                                                 geom, data.get('name'))
        else:
            raise MeshFormatError(f"Unknown geometry {geom!r}")
    except KeyError as missing:
        raise MeshFormatError(f"Surface lacks {missing}")
    except GeometryError:
        raise
    except (TypeError, ValueError) as bad:
        raise MeshFormatError(f"Malformed surface: {bad}")

    weights = data.get('weights')
    if weights is not None:
        weights = np.asarray(weights, dtype=float)
        if weights.shape != (mesh.vertex_count,):
            raise MeshFormatError(f"Expected {mesh.vertex_count} weights, got {weights.shape}")
    return mesh, weights


def mesh_from_obj(text, name=None):
    '''
    Reads a closed triangulated OBJ surface as a flat surface. Lengths come from the vertex positions,
    which are then dropped.
    '''
    positions, triangles = [], []
    for number, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0].startswith('#'):
            continue
        try:
            if parts[0] == 'v':
                positions.append([float(x) for x in parts[1:4]])
            elif parts[0] == 'f':
                ids = [int(p.split('/')[0]) for p in parts[1:]]
                ids = [i - 1 if i > 0 else len(positions) + i for i in ids]
                if len(ids) != 3:
                    raise MeshFormatError(f"Line {number}: only triangles are supported")
                triangles.append(ids)
        except ValueError:
            raise MeshFormatError(f"Line {number}: cannot parse {line!r}")

    used = sorted({i for t in triangles for i in t})
    if not used or used[-1] >= len(positions) or used[0] < 0:
        raise MeshFormatError("Faces reference missing vertices")
    relabel = {old: new for new, old in enumerate(used)}
    points = np.asarray(positions, dtype=float)

    def length(a, b):
        return float(np.linalg.norm(points[used[a]] - points[used[b]]))

    return DeltaTriangulation.from_triangles([[relabel[i] for i in t] for t in triangles], length,
                                             geometry.flat, name)


def _flat_angle_opposite(a, b, c, tol):
    s = (a + b + c) / 2
    if min(s - a, s - b, s - c) <= tol.eps * s:
        raise InfeasibleFace(f"Sides {a}, {b}, {c} violate the triangle inequality")
    return 2 * math.atan2(math.sqrt((s - b) * (s - c)), math.sqrt(s * (s - a)))


def angle_opposite(mesh, a, b, c, tol=DEFAULT_TOLERANCE):
    if mesh.geometry == geometry.hyperbolic:
        return hyp.angle_opposite(a, b, c, tol)
    return _flat_angle_opposite(a, b, c, tol)


def corner_angles(mesh, f, tol=DEFAULT_TOLERANCE):
    '''
    The angles of face f at the tails of its halfedges, in face order.
    '''
    l0, l1, l2 = mesh.face_lengths(f)
    try:
        return (angle_opposite(mesh, l1, l2, l0, tol), angle_opposite(mesh, l2, l0, l1, tol),
                angle_opposite(mesh, l0, l1, l2, tol))
    except InfeasibleFace as e:
        raise InfeasibleFace(f"Face {f}: {e}")


@dataclass
class ConeData:
    angles: np.ndarray

    @property
    def curvature(self):
        return 2 * np.pi - self.angles


def cone_angles(mesh, tol=DEFAULT_TOLERANCE):
    '''
    Sums the corner angles at every vertex, every corner of a self glued face counting separately.
    '''
    angles = np.zeros(mesh.vertex_count)
    for f in range(mesh.face_count):
        for h, a in zip(mesh.face_halfedges(f), corner_angles(mesh, f, tol)):
            angles[mesh.vertex[h]] += a
    return ConeData(angles)


def face_area(mesh, f, tol=DEFAULT_TOLERANCE):
    '''
    Heron's formula in the ordering that keeps it accurate for needles (flat), angle defect (hyperbolic).
    '''
    if mesh.geometry == geometry.hyperbolic:
        return math.pi - sum(corner_angles(mesh, f, tol))
    c, b, a = sorted(mesh.face_lengths(f))
    corner_angles(mesh, f, tol)
    return 0.25 * math.sqrt(max(0.0, (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))))


def total_area(mesh, tol=DEFAULT_TOLERANCE):
    return sum(face_area(mesh, f, tol) for f in range(mesh.face_count))


@dataclass
class HingeChart:
    '''
    Two faces around an edge unfolded into one chart. For halfedge h = i→j, k is the third vertex of
    h's face and l that of its twin's. Flat positions are 2-vectors with i at the origin and j on the
    positive x axis; hyperbolic ones are hyperboloid points, i at the origin, j on the positive x
    axis. k lies on the positive y side, l on the negative.
    '''
    halfedge: int
    edge: int
    geometry: str
    labels: tuple
    i: np.ndarray
    j: np.ndarray
    k: np.ndarray
    l: np.ndarray
    lengths: dict
    self_glued: bool = False

    def distance(self, a, b):
        p, q = getattr(self, a), getattr(self, b)
        if self.geometry == geometry.hyperbolic:
            return hyp.h_distance(p, q)
        return float(np.linalg.norm(p - q))

    @property
    def diameter(self):
        return max(self.lengths.values())


def _place_flat(base, a, b, sign, tol):
    '''The apex of a flat triangle on base [0, base] with sides a (from origin) and b.'''
    x = (base * base + a * a - b * b) / (2 * base)
    s = (base + a + b) / 2
    if min(s - a, s - b, s - base) <= tol.eps * s:
        raise InfeasibleFace(f"Sides {base}, {a}, {b} violate the triangle inequality")
    area = math.sqrt((s * (s - a)) * ((s - b) * (s - base)))
    return np.array([x, sign * 2 * area / base])


def unfold_hinge(mesh, edge, tol=DEFAULT_TOLERANCE, halfedge=None):
    '''
    Unfolds the two faces around edge into a common chart. A self glued edge unfolds the same way,
    the identified vertices just get two positions.

    :param halfedge: which halfedge of edge plays i→j, by default the edge's own.
    '''
    h = mesh.edge_halfedge[edge] if halfedge is None else halfedge
    t = mesh.twin[h]
    lij = mesh.length(h)
    ljk, lki = mesh.length(mesh.next[h]), mesh.length(mesh.prev(h))
    lil, llj = mesh.length(mesh.next[t]), mesh.length(mesh.prev(t))
    labels = (mesh.vertex[h], mesh.vertex[t], mesh.vertex[mesh.prev(h)], mesh.vertex[mesh.prev(t)])
    lengths = {'ij': lij, 'jk': ljk, 'ki': lki, 'il': lil, 'lj': llj}

    if mesh.geometry == geometry.hyperbolic:
        i, j = np.array(hyp.ORIGIN), np.array(hyp.point_at(lij))
        k = np.array(hyp.point_at(lki, hyp.angle_opposite(ljk, lij, lki, tol)))
        l = np.array(hyp.point_at(lil, -hyp.angle_opposite(llj, lij, lil, tol)))
    else:
        i, j = np.zeros(2), np.array([lij, 0.0])
        k = _place_flat(lij, lki, ljk, 1, tol)
        l = _place_flat(lij, lil, llj, -1, tol)

    return HingeChart(h, edge, mesh.geometry, labels, i, j, k, l, lengths,
                      mesh.face[h] == mesh.face[t])


def face_chart(mesh, f, tol=DEFAULT_TOLERANCE):
    '''
    Face f placed with its first halfedge's tail at the origin, its head on the positive x axis and
    the third vertex above.
    '''
    h = mesh.face_halfedge[f]
    l0, l1, l2 = mesh.face_lengths(f)
    if mesh.geometry == geometry.hyperbolic:
        return (np.array(hyp.ORIGIN), np.array(hyp.point_at(l0)),
                np.array(hyp.point_at(l2, hyp.angle_opposite(l1, l0, l2, tol))))
    return np.zeros(2), np.array([l0, 0.0]), _place_flat(l0, l2, l1, 1, tol)


def hinge_is_convex(chart, tol=DEFAULT_TOLERANCE):
    '''
    True when i and j lie strictly on opposite sides of the line (geodesic) through k and l.
    '''
    if chart.self_glued:
        return False
    if chart.geometry == geometry.hyperbolic:
        g = hyp.geodesic_through(chart.k, chart.l, tol)
        si, sj = hyp.minkowski(chart.i, g), hyp.minkowski(chart.j, g)
        scale = 1.0
    else:
        d = chart.l - chart.k
        si, sj = cross2(d, chart.i - chart.k), cross2(d, chart.j - chart.k)
        scale = float(d @ d)
    return si * sj < 0 and min(abs(si), abs(sj)) > tol.eps * scale


def flip_edge(mesh, edge, tol=DEFAULT_TOLERANCE):
    '''
    Replaces edge by the other diagonal of its hinge, the new length measured in the hinge chart.

    :return: the new edge length
    '''
    chart = unfold_hinge(mesh, edge, tol)
    if not hinge_is_convex(chart, tol):
        raise NonConvexHinge(f"Hinge of edge {edge} is not convex", edge=edge)
    new_length = chart.distance('k', 'l')
    log.debug(f"flip edge {edge}: {chart.lengths['ij']} -> {new_length}")
    mesh.flip(chart.halfedge, new_length)
    return new_length


def _check_weights(weights):
    weights = np.asarray(weights, dtype=float)
    if not np.all(np.isfinite(weights)) or np.any(weights <= 0):
        raise NonpositiveWeight("Weights must be positive and finite")
    return weights


def weight_violations(mesh, weights):
    '''
    Edges failing the vertex-weight domain inequality and edges failing the disjoint circle surrogate.

    Flat weights are squared radii: w_i < l² + w_j both ways, surrogate √w_i + √w_j < l.
    Hyperbolic weights are radii: r_i < arccosh(cosh r_j cosh l) both ways, surrogate r_i + r_j < l.
    Boundary weights only need to be positive.

    :return: (rejected edges, non surrogate edges)
    '''
    weights = _check_weights(weights)
    if weights.shape != (mesh.vertex_count,):
        raise NonpositiveWeight(f"Expected {mesh.vertex_count} weights, got {weights.shape}")
    rejected, loose = [], []
    if mesh.geometry == geometry.boundary:
        return rejected, loose

    for e in range(mesh.edge_count):
        a, b = mesh.edge_vertices(e)
        l = float(mesh.edge_lengths[e])
        wa, wb = weights[a], weights[b]
        if mesh.geometry == geometry.hyperbolic:
            bound = math.cosh(l)
            ok = math.cosh(wa) < math.cosh(wb) * bound and math.cosh(wb) < math.cosh(wa) * bound
            disjoint = wa + wb < l
        else:
            ok = wa < l * l + wb and wb < l * l + wa
            disjoint = math.sqrt(wa) + math.sqrt(wb) < l
        if not ok:
            rejected.append(e)
        if not disjoint:
            loose.append(e)
    return rejected, loose


def validate_weights(mesh, weights):
    '''
    Classifies weights against the edges of the current triangulation.

    Edge lengths only bound the true vertex distances from above, so passing here is necessary, not
    sufficient, for the weights to be admissible on the surface.

    :return: a weight_class value
    '''
    rejected, loose = weight_violations(mesh, weights)
    if rejected:
        return weight_class.rejected
    if loose:
        return weight_class.admissible
    return weight_class.surrogate


def min_incident_lengths(mesh):
    '''The shortest edge at every vertex, loops included.'''
    result = np.full(mesh.vertex_count, np.inf)
    for h in range(mesh.halfedge_count):
        v = mesh.vertex[h]
        result[v] = min(result[v], mesh.length(h))
    return result


def scale_lengths(mesh, factor, geometry_=None, name=None):
    '''
    A copy of mesh with every length multiplied by factor, optionally reinterpreted in another geometry.
    '''
    result = mesh.copy()
    result.edge_lengths = result.edge_lengths * factor
    if geometry_ is not None:
        result.geometry = geometry_
    if name is not None:
        result.name = name
    result.validate()
    return result
