'''
Weighted Delaunay

Flat tori

A flat torus is the plane modulo a lattice with periods v1, v2 (rows of periods), carrying finitely
many marked points. Triangles are written with lifted vertices (vertex, a, b), the copy of the vertex
translated by a·v1 + b·v2, which is all it takes to glue them into a DeltaTriangulation.

Also here is a brute-force oracle for the weighted Delaunay triangulation of a torus, a direct
periodic regular triangulation: every lifted triple is accepted when no lifted point has smaller
power to its power center than the triple's own vertices.
'''
# Python imports
import math

from dataclasses import dataclass

# Package imports
import numpy as np

from scipy.spatial import Delaunay

from .errors import GeometryError, MeshFormatError
from .logs import logger as log
from .mesh import DeltaTriangulation, geometry, min_incident_lengths
from .options import DEFAULT_TOLERANCE

# Periods of the unit square lattice
SQUARE = ((1.0, 0.0), (0.0, 1.0))


@dataclass
class FlatTorus:
    '''A torus with its marked points and the triangulation built over them.'''
    periods: np.ndarray
    points: np.ndarray
    mesh: DeltaTriangulation

    @property
    def area(self):
        return abs(float(np.linalg.det(self.periods)))

    def lift(self, v, a, b):
        return lift(self.periods, self.points, v, a, b)


def lift(periods, points, v, a, b):
    return np.asarray(points[v], dtype=float) + a * np.asarray(periods[0]) + b * np.asarray(periods[1])


def _canonical(triangle):
    '''A lifted triangle up to translation and order, the least of its three anchored, sorted forms.'''
    forms = []
    for _, a0, b0 in triangle:
        forms.append(tuple(sorted((v, a - a0, b - b0) for v, a, b in triangle)))
    return min(forms)


def torus_from_lifts(periods, points, triangles, name=None):
    '''
    Glues lifted triangles into a flat torus. Triangles must be counter clockwise and pairwise distinct
    modulo the lattice, and each halfedge must meet a halfedge running back along the same lifted segment.

    :param triangles: [[(v, a, b), (v, a, b), (v, a, b)], ...]
    :return: FlatTorus
    '''
    periods = np.asarray(periods, dtype=float)
    points = np.asarray(points, dtype=float)
    corners, lengths = {}, {}
    for f, tri in enumerate(triangles):
        for c in range(3):
            (va, aa, ba), (vb, ab, bb) = tri[c], tri[(c + 1) % 3]
            key = (int(va), int(vb), int(ab - aa), int(bb - ba))
            if key in corners:
                raise MeshFormatError(f"Lifted halfedge {key} used twice")
            corners[key] = (f, c)
            lengths[key] = float(np.linalg.norm(lift(periods, points, vb, ab, bb) - lift(periods, points, va, aa, ba)))

    gluing, edge_lengths, done = [], [], set()
    for key in sorted(corners):
        if key in done:
            continue
        va, vb, da, db = key
        back = (vb, va, -da, -db)
        if back not in corners:
            raise MeshFormatError(f"Lifted halfedge {key} has no partner")
        gluing.append([list(corners[key]), list(corners[back])])
        edge_lengths.append(lengths[key])
        done.update((key, back))

    faces = [[int(v) for v, _, _ in tri] for tri in triangles]
    mesh = DeltaTriangulation.from_faces(faces, gluing, edge_lengths, geometry.flat, name)
    return FlatTorus(periods, points, mesh)


def _orient(periods, points, triangle):
    p = [lift(periods, points, *x) for x in triangle]
    turn = (p[1][0] - p[0][0]) * (p[2][1] - p[0][1]) - (p[1][1] - p[0][1]) * (p[2][0] - p[0][0])
    return list(triangle) if turn > 0 else [triangle[0], triangle[2], triangle[1]]


def _tiling(periods, points, reach):
    '''Every lifted point (v, a, b) whose translate lies within reach of the fundamental domain.'''
    periods = np.asarray(periods, dtype=float)
    det = abs(float(np.linalg.det(periods)))
    height = det / max(np.linalg.norm(periods[0]), np.linalg.norm(periods[1]))
    K = int(math.ceil(reach / height)) + 1
    labels = [(v, a, b) for a in range(-K, K + 1) for b in range(-K, K + 1) for v in range(len(points))]
    return labels, np.array([lift(periods, points, *x) for x in labels])


def delaunay_torus(periods, points, name=None):
    '''
    The unweighted Delaunay triangulation of points on the torus, from scipy's planar Delaunay of a
    tiling. Cocircular point sets (lattices among them) are triangulated inconsistently across
    copies and fail to glue; build those explicitly.

    :return: FlatTorus
    '''
    periods = np.asarray(periods, dtype=float)
    points = np.asarray(points, dtype=float)
    labels, positions = _tiling(periods, points, 2 * (np.linalg.norm(periods[0]) + np.linalg.norm(periods[1])))
    planar = Delaunay(positions)

    found = {}
    for simplex in planar.simplices:
        tri = [labels[i] for i in simplex]
        if not any(a == 0 and b == 0 for _, a, b in tri):
            continue
        key = _canonical(tri)
        found.setdefault(key, _orient(periods, points, list(key)))

    if len(found) != 2 * len(points):
        raise GeometryError(f"Tiled Delaunay gave {len(found)} triangles for {len(points)} points, "
                            f"expected {2 * len(points)}; the point set is probably cocircular")
    return torus_from_lifts(periods, points, sorted(found.values()), name)


def one_vertex_torus(a=0.0, b=1.0, name=None):
    '''
    The one-vertex torus with periods (1, 0) and (a, b), cut along the diagonal v1 + v2.
    '''
    periods = ((1.0, 0.0), (a, b))
    triangles = [[(0, 0, 0), (0, 1, 0), (0, 1, 1)],
                 [(0, 0, 0), (0, 1, 1), (0, 0, 1)]]
    return torus_from_lifts(periods, [(0.0, 0.0)], triangles, name or f"one-vertex torus ({a}, {b})")


def two_vertex_torus(name="two-vertex torus"):
    '''
    The square torus with vertex 0 at the lattice points and vertex 1 at (0.5, 0.4), coned from 1 over
    the unit square. The edge along the square's bottom side is not Delaunay.
    '''
    triangles = [[(0, 0, 0), (0, 1, 0), (1, 0, 0)],
                 [(0, 1, 0), (0, 1, 1), (1, 0, 0)],
                 [(0, 1, 1), (0, 0, 1), (1, 0, 0)],
                 [(0, 0, 1), (0, 0, 0), (1, 0, 0)]]
    return torus_from_lifts(SQUARE, [(0.0, 0.0), (0.5, 0.4)], triangles, name)


def three_vertex_square_torus(name="three-vertex square torus"):
    '''
    The square torus with vertices at 0, (1/3, 2/3) and (2/3, 1/3). They form a lattice whose
    Delaunay triangles are acute, copies of two shapes translated to each vertex.
    '''
    up = [[(0, 0, 0), (2, 0, 0), (1, 0, 0)],
          [(1, 0, 0), (0, 1, 1), (2, 0, 1)],
          [(2, 0, 0), (1, 1, 0), (0, 1, 1)]]
    down = [[(0, 0, 0), (1, 0, -1), (2, 0, 0)],
            [(1, 0, 0), (2, 0, 0), (0, 1, 1)],
            [(2, 0, 0), (0, 1, 0), (1, 1, 0)]]
    return torus_from_lifts(SQUARE, [(0.0, 0.0), (1 / 3, 2 / 3), (2 / 3, 1 / 3)], up + down, name)


def random_torus(n, rng, separation=0.05, name=None, tries=100):
    '''
    A torus with periods (1, 0), (a, b), a in [-0.3, 0.3], b in [0.8, 1.2], and n points drawn
    uniformly, at least separation apart, triangulated by delaunay_torus.
    '''
    for _ in range(tries):
        periods = np.array([[1.0, 0.0], [rng.uniform(-0.3, 0.3), rng.uniform(0.8, 1.2)]])
        points = rng.random((n, 2)) @ periods
        labels, positions = _tiling(periods, points, 1.0)
        gaps = np.linalg.norm(points[:, None, :] - positions[None, :, :], axis=2)
        same = np.array([[v == i and a == 0 and b == 0 for v, a, b in labels] for i in range(n)])
        if gaps[~same].min() < separation:
            continue
        try:
            return delaunay_torus(periods, points, name or f"random torus {n}")
        except GeometryError:
            continue
    raise GeometryError(f"No usable random torus with {n} points after {tries} tries")


def surrogate_weights(mesh, rng, fraction=0.49):
    '''Random squared radii with every circle inside fraction of its shortest incident edge.'''
    upper = fraction * min_incident_lengths(mesh)
    return (upper * (1 - rng.random(mesh.vertex_count))) ** 2


def regular_triangulation(torus, weights, tol=DEFAULT_TOLERANCE):
    '''
    The weighted Delaunay triangulation of a flat torus by brute force. Every triangle of lifted points
    with a vertex in the fundamental domain and no lifted point of smaller power to its power center
    is kept, up to lattice translation. Weights are squared radii.

    Edges of the result are no longer than twice the diameter, itself at most (|v1| + |v2|) / 2, so
    only triples within |v1| + |v2| of each other need looking at.

    :return: FlatTorus triangulated by the result
    '''
    periods, points = torus.periods, torus.points
    w = np.asarray(weights, dtype=float)
    reach = float(np.linalg.norm(periods[0]) + np.linalg.norm(periods[1]))
    labels, positions = _tiling(periods, points, 2 * reach)
    lw = np.array([w[v] for v, _, _ in labels])
    scale = reach * reach

    found = {}
    for i in range(len(points)):
        anchor = labels.index((i, 0, 0))
        p = positions[anchor]
        offsets = positions - p
        near = np.flatnonzero((np.linalg.norm(offsets, axis=1) <= reach) & (np.arange(len(labels)) != anchor))
        check = np.flatnonzero(np.linalg.norm(offsets, axis=1) <= 2 * reach)

        J, K = np.triu_indices(len(near), 1)
        j, k = near[J], near[K]
        u, v = offsets[j], offsets[k]
        det = u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0]
        keep = np.abs(det) > tol.eps * scale
        j, k, u, v, det = j[keep], k[keep], u[keep], v[keep], det[keep]

        # power center relative to p: 2 u·x = |u|² - w_j + w_i, likewise for v
        ru = (np.einsum('ij,ij->i', u, u) - lw[j] + w[i]) / 2
        rv = (np.einsum('ij,ij->i', v, v) - lw[k] + w[i]) / 2
        x = np.stack([(ru * v[:, 1] - rv * u[:, 1]) / det, (u[:, 0] * rv - v[:, 0] * ru) / det], axis=1)
        own = np.einsum('ij,ij->i', x, x) - w[i]

        delta = offsets[check][None, :, :] - x[:, None, :]
        powers = np.einsum('mnk,mnk->mn', delta, delta) - lw[check][None, :]
        empty = np.all(powers >= own[:, None] - tol.tie * scale, axis=1)

        for a, b in zip(j[empty], k[empty]):
            tri = [labels[anchor], labels[a], labels[b]]
            key = _canonical(tri)
            found.setdefault(key, _orient(periods, points, list(key)))

    log.debug(f"oracle kept {len(found)} triangles on {torus.mesh.name or 'torus'}")
    if len(found) != 2 * len(points):
        raise GeometryError(f"Oracle found {len(found)} triangles, expected {2 * len(points)}; "
                            f"the weights are probably at a tie")
    return torus_from_lifts(periods, points, sorted(found.values()), torus.mesh.name)
