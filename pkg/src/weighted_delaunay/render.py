'''
Weighted Delaunay

SVG rendering

A debugging aid for small flat surfaces: faces are laid out by breadth-first unfolding from a root
face, so each face is drawn once in one fundamental domain. Drawn are the triangulation, the weight
circles and the weighted Voronoi edges, each as the two segments from a face's power center to its
feet on the face's sides.
'''
# Python imports
from collections import deque

# Package imports
import matplotlib

import numpy as np

from matplotlib.collections import LineCollection
from matplotlib.figure import Figure
from matplotlib.patches import Circle

from .delaunay import weight_values
from .errors import GeometryError
from .euclid import WeightedPoint, power_center
from .logs import logger as log
from .mesh import face_chart, geometry
from .options import DEFAULT_TOLERANCE


def _apex(q, p, to_q, to_p):
    '''The point at distances to_q, to_p from q and p, left of the direction q→p.'''
    base = np.linalg.norm(p - q)
    x = (base * base + to_q * to_q - to_p * to_p) / (2 * base)
    y = np.sqrt(max(0.0, to_q * to_q - x * x))
    e1 = (p - q) / base
    e2 = np.array([-e1[1], e1[0]])
    return q + x * e1 + y * e2


def unfold(mesh, root=0, tol=DEFAULT_TOLERANCE):
    '''
    Lays the faces of a flat surface out in the plane, each one glued to the face it was reached from.

    :return: (face -> corner positions in face_halfedges order, halfedges crossed by the layout tree)
    '''
    if mesh.geometry != geometry.flat:
        raise GeometryError("Only flat surfaces can be laid out in the plane")

    a, b, c = face_chart(mesh, root, tol)
    layout = {root: np.array([a, b, c])}
    tree = set()
    queue = deque([root])
    while queue:
        f = queue.popleft()
        for corner, h in enumerate(mesh.face_halfedges(f)):
            t = mesh.twin[h]
            g = mesh.face[t]
            if g in layout:
                continue
            q, p = layout[f][(corner + 1) % 3], layout[f][corner]
            r = _apex(q, p, mesh.length(mesh.prev(t)), mesh.length(mesh.next[t]))
            hs = mesh.face_halfedges(g)
            start = hs.index(t)
            corners = [None] * 3
            corners[start], corners[(start + 1) % 3], corners[(start + 2) % 3] = q, p, r
            layout[g] = np.array(corners)
            tree.update((h, t))
            queue.append(g)
    return layout, tree


def _foot(point, a, b):
    d = b - a
    return a + d * float((point - a) @ d) / float(d @ d)


def render_svg(mesh, weights, fp, tol=DEFAULT_TOLERANCE, root=0):
    '''
    Writes an SVG drawing of a flat surface and its weighted Voronoi edges to fp, a path or a
    binary file.
    '''
    w = weight_values(weights)
    layout, _ = unfold(mesh, root, tol)

    edges, voronoi, circles = [], [], []
    for f, corners in layout.items():
        labels = mesh.face_vertices(f)
        for i in range(3):
            edges.append([corners[i], corners[(i + 1) % 3]])
        for p, v in zip(corners, labels):
            if w[v] > 0:
                circles.append((tuple(p), float(np.sqrt(w[v]))))
        center = power_center(*(WeightedPoint.of(p, w[v]) for p, v in zip(corners, labels)), tol=tol).center
        center = np.asarray(center)
        for i in range(3):
            voronoi.append([center, _foot(center, corners[i], corners[(i + 1) % 3])])

    with matplotlib.rc_context({'svg.hashsalt': 'weighted-delaunay', 'svg.fonttype': 'none'}):
        fig = Figure(figsize=(6, 6))
        ax = fig.add_subplot()
        ax.add_collection(LineCollection(edges, colors='0.6', linewidths=0.8))
        ax.add_collection(LineCollection(voronoi, colors='tab:red', linewidths=1.2))
        for p, radius in circles:
            ax.add_patch(Circle(p, radius, fill=False, edgecolor='tab:blue', linewidth=0.8))
        points = np.concatenate(list(layout.values()))
        ax.plot(points[:, 0], points[:, 1], 'k.')
        ax.set_aspect('equal')
        ax.autoscale_view()
        ax.set_title(mesh.name or '')
        fig.savefig(fp, format='svg', metadata={'Date': None})
    log.info(f"rendered {len(layout)} faces of {mesh.name or 'surface'}")
