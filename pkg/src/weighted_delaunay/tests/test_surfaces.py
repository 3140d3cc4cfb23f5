import math
import unittest

import numpy as np

from numpy.testing import assert_allclose

from weighted_delaunay import surfaces
from weighted_delaunay.boundary import TruncatedTriangulation
from weighted_delaunay.delaunay import triangulation_hash
from weighted_delaunay.errors import MeshFormatError
from weighted_delaunay.mesh import cone_angles, geometry, total_area
from weighted_delaunay.torus import one_vertex_torus, three_vertex_square_torus, two_vertex_torus

BUILDERS = {'square_torus': lambda: one_vertex_torus().mesh,
            'square_torus_weighted': lambda: one_vertex_torus().mesh,
            'skewed_torus': lambda: one_vertex_torus(0.8, 0.5).mesh,
            'two_vertex_torus': lambda: two_vertex_torus().mesh,
            'oversized_weights': lambda: two_vertex_torus().mesh,
            'three_vertex_square_torus': lambda: three_vertex_square_torus().mesh,
            'three_vertex_hyperbolic_torus': surfaces.three_vertex_hyperbolic_torus,
            'octagon': surfaces.octagon_surface,
            'slit_torus': surfaces.slit_torus,
            'pants': surfaces.pants,
            'one_holed_torus': surfaces.one_holed_torus}


class ShippedTestCase(unittest.TestCase):

    def test_names(self):
        self.assertEqual(surfaces.shipped(), sorted(BUILDERS))

    def test_match_builders(self):
        for name, build in BUILDERS.items():
            with self.subTest(name=name):
                mesh, _ = surfaces.load(name)
                built = build()
                self.assertEqual(mesh.geometry, built.geometry)
                self.assertEqual(triangulation_hash(mesh), triangulation_hash(built))

    def test_weights(self):
        _, weights = surfaces.load('two_vertex_torus')
        assert_allclose(weights, [0.01, 0.01])
        _, weights = surfaces.load('square_torus')
        self.assertIsNone(weights)

    def test_unknown(self):
        with self.assertRaises(MeshFormatError):
            surfaces.load('klein_bottle')


class SurfacesTestCase(unittest.TestCase):

    def test_octagon(self):
        mesh = surfaces.octagon_surface()
        self.assertEqual(mesh.geometry, geometry.hyperbolic)
        self.assertEqual((mesh.vertex_count, mesh.edge_count, mesh.face_count), (1, 9, 6))
        self.assertEqual(mesh.euler_characteristic(), -2)
        assert_allclose(cone_angles(mesh).angles, [2 * math.pi], rtol=1e-9)
        self.assertAlmostEqual(total_area(mesh), 4 * math.pi, places=9)

    def test_tetrahedron_scales(self):
        self.assertAlmostEqual(total_area(surfaces.tetrahedron(2.0)), 4 * math.sqrt(3))

    def test_hyperbolic_copy(self):
        flat = two_vertex_torus().mesh
        curved = surfaces.hyperbolic_copy(flat, 0.5)
        self.assertEqual(curved.geometry, geometry.hyperbolic)
        assert_allclose(curved.edge_lengths, flat.edge_lengths / 2)
        self.assertEqual(flat.geometry, geometry.flat)
        self.assertLess(total_area(curved), total_area(flat) / 4)

    def test_slit_torus(self):
        mesh = surfaces.slit_torus()
        self.assertEqual((mesh.vertex_count, mesh.edge_count, mesh.face_count), (2, 6, 4))
        self.assertAlmostEqual(float(np.sum(cone_angles(mesh).curvature)), 0.0, places=12)

    def test_bordered(self):
        for mesh in (surfaces.pants(), surfaces.one_holed_torus()):
            self.assertIsInstance(mesh, TruncatedTriangulation)
            self.assertEqual(mesh.geometry, geometry.boundary)
        self.assertEqual(surfaces.one_holed_torus().vertex_count, 1)

    def test_random_one_holed_torus(self):
        rng = np.random.default_rng(0)
        mesh = surfaces.random_one_holed_torus(rng)
        self.assertTrue(np.all((mesh.seam_lengths >= 0.5) & (mesh.seam_lengths <= 2.5)))
        self.assertIn('one-holed torus', mesh.name)
