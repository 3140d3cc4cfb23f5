'''
Weighted Delaunay

Example surfaces

Builders for the surfaces the package ships and tests against, flat, hyperbolic and with geodesic
boundary, and a loader for the JSON copies kept under data/. Flat tori live in torus.
'''
# Python imports
import math

from importlib import resources

# Package imports
import numpy as np

from . import serializers
from .boundary import TruncatedTriangulation
from .errors import MeshFormatError
from .mesh import DeltaTriangulation, geometry, mesh_from_json, scale_lengths
from .torus import one_vertex_torus, three_vertex_square_torus


def tetrahedron(side=1.0, name="tetrahedron"):
    '''The regular tetrahedron, a flat sphere with four cone points of angle π.'''
    triangles = [(0, 1, 2), (0, 3, 1), (0, 2, 3), (1, 3, 2)]
    return DeltaTriangulation.from_triangles(triangles, lambda a, b: side, geometry.flat, name)


def _octagon_chord(steps):
    '''Distance between corners steps apart on the regular octagon with angles π/4.'''
    cosh_r = (1 + math.sqrt(2)) ** 2
    return math.acosh(cosh_r ** 2 - (cosh_r ** 2 - 1) * math.cos(2 * math.pi * steps / 8))


def octagon_surface(name="genus 2 octagon"):
    '''
    The genus 2 surface glued from the regular hyperbolic octagon with angles π/4, sides paired as
    a b a⁻¹ b⁻¹ c d c⁻¹ d⁻¹. Triangulated as a fan from corner 0, all eight corners become the one
    vertex.
    '''
    faces = [[0, 0, 0] for _ in range(6)]

    def side(i):
        if i == 0:
            return [0, 0]
        elif i == 7:
            return [5, 2]
        return [i - 1, 1]

    gluing = [[side(a), side(b)] for a, b in ((0, 2), (1, 3), (4, 6), (5, 7))]
    lengths = [_octagon_chord(1)] * 4
    for m in range(5):
        gluing.append([[m, 2], [m + 1, 0]])
        lengths.append(_octagon_chord(m + 2))
    return DeltaTriangulation.from_faces(faces, gluing, lengths, geometry.hyperbolic, name)


def hyperbolic_copy(mesh, factor=1.0, name=None):
    '''The combinatorics and scaled lengths of mesh read as a hyperbolic surface.'''
    return scale_lengths(mesh, factor, geometry.hyperbolic, name or f"hyperbolic {mesh.name or 'surface'}")


def three_vertex_hyperbolic_torus(name="three-vertex hyperbolic torus"):
    '''The three-vertex square torus with doubled lengths as a hyperbolic cone surface.'''
    return hyperbolic_copy(three_vertex_square_torus().mesh, 2.0, name)


def slit_torus(name="slit torus"):
    '''
    A flat torus with one self glued edge: an isosceles triangle (u, v, u) folded shut along its two
    legs e, so v becomes a cone point inside it, glued along its base g to a unit square torus cut
    open along a loop at u.
    '''
    faces = [[0, 1, 0], [0, 0, 0], [0, 0, 0], [0, 0, 0]]
    gluing = [[[0, 0], [0, 1]],     # e, self glued
              [[0, 2], [1, 2]],     # g
              [[1, 0], [3, 1]],
              [[1, 1], [2, 2]],
              [[2, 0], [3, 2]],
              [[2, 1], [3, 0]]]     # square diagonal
    lengths = [0.6, 0.5, 1.0, 1.0, 1.0, math.sqrt(2)]
    return DeltaTriangulation.from_faces(faces, gluing, lengths, geometry.flat, name)


def pants(seams=(2.0, 2.0, 2.0), name="pair of pants"):
    '''
    The pair of pants from two right-angled hexagons with the given seams between its three
    boundaries.
    '''
    gluing = [[[0, 0], [1, 2]], [[0, 1], [1, 1]], [[0, 2], [1, 0]]]
    return TruncatedTriangulation.from_faces([[0, 1, 2], [0, 2, 1]], gluing, list(seams), geometry.boundary, name)


def one_holed_torus(seams=(1.0, 1.4, 2.0), name="one-holed torus"):
    '''
    A torus with one geodesic boundary, on the combinatorics of the one-vertex torus: two hexagons,
    three seams from the boundary back to itself.
    '''
    data = one_vertex_torus().mesh.to_json()
    return TruncatedTriangulation.from_faces(data['faces'], data['gluing'], list(seams), geometry.boundary, name)


def random_one_holed_torus(rng, low=0.5, high=2.5):
    seams = rng.uniform(low, high, 3)
    return one_holed_torus(seams, name=f"one-holed torus {np.round(seams, 3).tolist()}")


def shipped():
    '''Names of the surfaces under data/.'''
    folder = resources.files(__package__) / 'data'
    return sorted(p.name[:-5] for p in folder.iterdir() if p.name.endswith('.json'))


def load(name):
    '''
    Loads a shipped surface.

    :return: (mesh, weights or None)
    '''
    path = resources.files(__package__) / 'data' / f"{name}.json"
    if not path.is_file():
        raise MeshFormatError(f"No shipped surface named {name!r}, try one of {', '.join(shipped())}")
    with path.open('r', encoding='utf-8') as fp:
        return mesh_from_json(serializers.load(fp))
