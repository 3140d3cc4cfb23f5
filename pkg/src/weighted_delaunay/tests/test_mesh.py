import math
import unittest

import numpy as np

from numpy.testing import assert_allclose

from weighted_delaunay.errors import GeometryError, InfeasibleFace, MeshFormatError, NonConvexHinge, NonpositiveWeight
from weighted_delaunay.mesh import (DeltaTriangulation, cone_angles, corner_angles, flip_edge, geometry,
                                    hinge_is_convex, mesh_from_json, mesh_from_obj, min_incident_lengths, total_area,
                                    unfold_hinge, validate_weights, weight_class, weight_violations)
from weighted_delaunay.surfaces import hyperbolic_copy, slit_torus, tetrahedron, three_vertex_hyperbolic_torus
from weighted_delaunay.torus import one_vertex_torus, two_vertex_torus

TETRAHEDRON_OBJ = '''# a regular tetrahedron
v 1 1 1
v 1 -1 -1
v -1 1 -1
v -1 -1 1
vn 0 0 1
f 1/1/1 2/2/1 3/3/1
f 1 4 2
f 1 3 4
f 2 4 3
'''


class ConstructionTestCase(unittest.TestCase):

    def test_corner_angles(self):
        mesh = one_vertex_torus().mesh
        for f in range(mesh.face_count):
            assert_allclose(sorted(corner_angles(mesh, f)), [math.pi / 4, math.pi / 4, math.pi / 2])
        curved = three_vertex_hyperbolic_torus()
        for f in range(curved.face_count):
            self.assertLess(sum(corner_angles(curved, f)), math.pi)

    def test_tetrahedron(self):
        mesh = tetrahedron()
        self.assertEqual((mesh.vertex_count, mesh.edge_count, mesh.face_count), (4, 6, 4))
        self.assertEqual(mesh.euler_characteristic(), 2)
        assert_allclose(cone_angles(mesh).angles, [math.pi] * 4)
        self.assertAlmostEqual(total_area(mesh), math.sqrt(3))

    def test_square_torus(self):
        mesh = one_vertex_torus().mesh
        self.assertEqual((mesh.vertex_count, mesh.edge_count, mesh.face_count), (1, 3, 2))
        self.assertEqual(mesh.euler_characteristic(), 0)
        self.assertEqual(len(mesh.outgoing(0)), 6)
        self.assertAlmostEqual(total_area(mesh), 1.0)
        assert_allclose(cone_angles(mesh).angles, [2 * math.pi])
        assert_allclose(sorted(mesh.edge_lengths), [1, 1, math.sqrt(2)])
        self.assertAlmostEqual(mesh.edge_lengths[0], math.sqrt(2))

    def test_bad_faces(self):
        with self.assertRaises(MeshFormatError):
            DeltaTriangulation.from_faces([[0, 1]], [], [])
        with self.assertRaises(MeshFormatError):
            DeltaTriangulation.from_faces([[0, 1, 2]], [], [])
        with self.assertRaises(MeshFormatError):
            DeltaTriangulation.from_faces([[0, 0, 0], [0, 0, 0]], [[[0, 0], [1, 2]]], [1.0, 2.0])
        with self.assertRaises(MeshFormatError):
            DeltaTriangulation.from_faces([[0, 0, 0], [0, 0, 0]], [[[0, 0], [0, 0]]], [1.0])

    def test_inconsistent_orientation(self):
        with self.assertRaises(MeshFormatError):
            DeltaTriangulation.from_triangles([(0, 1, 2), (0, 1, 3)], lambda a, b: 1.0)

    def test_mislabelled_vertex(self):
        data = one_vertex_torus().mesh.to_json()
        data['faces'][0] = [0, 1, 0]
        with self.assertRaises(MeshFormatError):
            mesh_from_json(data)

    def test_triangle_inequality(self):
        data = one_vertex_torus().mesh.to_json()
        data['edge_lengths'] = [3.0, 1.0, 1.0]
        with self.assertRaises(InfeasibleFace):
            mesh_from_json(data)

    def test_nonpositive_length(self):
        data = one_vertex_torus().mesh.to_json()
        data['edge_lengths'][1] = 0.0
        with self.assertRaises(MeshFormatError):
            mesh_from_json(data)


class JsonTestCase(unittest.TestCase):

    def test_round_trip(self):
        mesh = two_vertex_torus().mesh
        data = mesh.to_json([0.01, 0.02])
        again, weights = mesh_from_json(data)
        self.assertEqual(again.to_json(weights), data)
        assert_allclose(weights, [0.01, 0.02])

    def test_round_trip_after_flip(self):
        mesh = two_vertex_torus().mesh
        for e in range(mesh.edge_count):
            if hinge_is_convex(unfold_hinge(mesh, e)):
                flip_edge(mesh, e)
                break
        data = mesh.to_json()
        again, weights = mesh_from_json(data)
        self.assertIsNone(weights)
        self.assertEqual(again.to_json(), data)

    def test_errors(self):
        data = one_vertex_torus().mesh.to_json()
        with self.assertRaises(MeshFormatError):
            mesh_from_json([data])
        with self.assertRaises(MeshFormatError):
            mesh_from_json(dict(data, geometry='spherical'))
        with self.assertRaises(MeshFormatError):
            mesh_from_json({k: v for k, v in data.items() if k != 'gluing'})
        with self.assertRaises(MeshFormatError):
            mesh_from_json(dict(data, weights=[0.1, 0.2]))
        with self.assertRaises(MeshFormatError):
            mesh_from_json(dict(data, gluing=[[0, 1], [2, 3], [4, 5]]))

    def test_errors_are_value_errors(self):
        with self.assertRaises(ValueError):
            mesh_from_json({'geometry': 'flat'})


class ObjTestCase(unittest.TestCase):

    def test_tetrahedron(self):
        mesh = mesh_from_obj(TETRAHEDRON_OBJ, 'tet')
        self.assertEqual(mesh.name, 'tet')
        self.assertEqual(mesh.geometry, geometry.flat)
        self.assertEqual((mesh.vertex_count, mesh.edge_count, mesh.face_count), (4, 6, 4))
        assert_allclose(mesh.edge_lengths, [2 * math.sqrt(2)] * 6)
        assert_allclose(cone_angles(mesh).angles, [math.pi] * 4)

    def test_quads(self):
        with self.assertRaises(MeshFormatError):
            mesh_from_obj("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n")

    def test_garbage(self):
        with self.assertRaises(MeshFormatError):
            mesh_from_obj("v 0 zero 0\n")
        with self.assertRaises(MeshFormatError):
            mesh_from_obj("v 0 0 0\nf 1 2 3\n")


class FlipTestCase(unittest.TestCase):

    def test_square_hinge(self):
        chart = unfold_hinge(one_vertex_torus().mesh, 0)
        self.assertTrue(hinge_is_convex(chart))
        self.assertAlmostEqual(chart.distance('k', 'l'), math.sqrt(2))
        self.assertGreater(chart.k[1], 0)
        self.assertLess(chart.l[1], 0)

    def test_flips_preserve_geometry(self):
        mesh = two_vertex_torus().mesh
        area, cones = total_area(mesh), cone_angles(mesh).angles
        flipped = 0
        for e in range(mesh.edge_count):
            if not hinge_is_convex(unfold_hinge(mesh, e)):
                continue
            work = mesh.copy()
            k, l = unfold_hinge(work, e).labels[2:]
            flip_edge(work, e)
            work.validate()
            flipped += 1
            self.assertEqual(sorted(work.edge_vertices(e)), sorted((k, l)))
            self.assertAlmostEqual(total_area(work), area, places=12)
            assert_allclose(cone_angles(work).angles, cones, atol=1e-12)
        self.assertGreater(flipped, 0)

    def test_flip_twice_restores_length(self):
        mesh = one_vertex_torus().mesh
        before = mesh.edge_lengths.copy()
        flip_edge(mesh, 0)
        flip_edge(mesh, 0)
        assert_allclose(mesh.edge_lengths, before)

    def test_self_glued(self):
        mesh = slit_torus()
        self.assertTrue(mesh.is_self_glued(0))
        self.assertFalse(any(mesh.is_self_glued(e) for e in range(1, mesh.edge_count)))
        self.assertTrue(unfold_hinge(mesh, 0).self_glued)
        with self.assertRaises(NonConvexHinge) as caught:
            flip_edge(mesh, 0)
        self.assertEqual(caught.exception.edge, 0)

    def test_slit_torus_curvature(self):
        mesh = slit_torus()
        self.assertEqual(mesh.euler_characteristic(), 0)
        self.assertAlmostEqual(float(np.sum(cone_angles(mesh).curvature)), 0.0, places=12)

    def test_hyperbolic_chart(self):
        mesh = hyperbolic_copy(two_vertex_torus().mesh)
        for e in range(mesh.edge_count):
            chart = unfold_hinge(mesh, e)
            for pair, length in chart.lengths.items():
                a, b = pair
                self.assertAlmostEqual(chart.distance(a, b), length, places=9)

    def test_hyperbolic_gauss_bonnet(self):
        mesh = three_vertex_hyperbolic_torus()
        self.assertEqual(mesh.geometry, geometry.hyperbolic)
        self.assertAlmostEqual(float(np.sum(cone_angles(mesh).curvature)), total_area(mesh), places=10)


class WeightTestCase(unittest.TestCase):

    def test_classes(self):
        square = one_vertex_torus().mesh
        self.assertEqual(validate_weights(square, [0.2]), weight_class.surrogate)
        self.assertEqual(validate_weights(square, [0.3]), weight_class.admissible)

        two = two_vertex_torus().mesh
        self.assertEqual(validate_weights(two, [0.01, 0.01]), weight_class.surrogate)
        self.assertEqual(validate_weights(two, [1.0, 0.01]), weight_class.rejected)
        rejected, loose = weight_violations(two, [1.0, 0.01])
        self.assertTrue(set(rejected) <= set(loose))
        self.assertTrue(rejected)

    def test_hyperbolic_classes(self):
        mesh = three_vertex_hyperbolic_torus()
        self.assertEqual(validate_weights(mesh, [0.1, 0.2, 0.3]), weight_class.surrogate)
        self.assertEqual(validate_weights(mesh, [0.1, 0.9, 0.1]), weight_class.admissible)

    def test_nonpositive(self):
        mesh = one_vertex_torus().mesh
        for bad in ([0.0], [-0.1], [float('nan')], [0.1, 0.1]):
            with self.assertRaises(NonpositiveWeight):
                validate_weights(mesh, bad)

    def test_min_incident_lengths(self):
        assert_allclose(min_incident_lengths(two_vertex_torus().mesh), [math.sqrt(0.41)] * 2)

    def test_errors_share_a_base(self):
        self.assertTrue(issubclass(NonpositiveWeight, GeometryError))
