import io
import unittest

import numpy as np

from weighted_delaunay.delaunay import EdgeCertificate, edge_status
from weighted_delaunay.options import tolerance
from weighted_delaunay.serializers import dump, dumps, loads


class GeometryEncoderTestCase(unittest.TestCase):

    test_obj = {"int": np.int64(1),
                "float": np.float64(1.25),
                "array": np.array([0.5, 2.0]),
                "bool": np.bool_(True),
                "tuple": (1, 2),
                "set": {3, 1},
                "certificate": EdgeCertificate(0, 0.5, 0.5, 1.0, edge_status.delaunay),
                "tolerance": tolerance()
                }

    decoded_obj = {"int": 1,
                   "float": 1.25,
                   "array": [0.5, 2.0],
                   "bool": True,
                   "tuple": [1, 2],
                   "set": [1, 3],
                   "certificate": {"edge": 0, "h_k": 0.5, "h_l": 0.5, "margin": 1.0, "status": "delaunay"},
                   "tolerance": {"clamp": 1e-09, "digits": 7, "eps": 1e-12, "tie": 1e-09}
                   }

    expected_json = '''{
  "array": [
    0.5,
    2.0
  ],
  "bool": true,
  "certificate": {
    "edge": 0,
    "h_k": 0.5,
    "h_l": 0.5,
    "margin": 1.0,
    "status": "delaunay"
  },
  "float": 1.25,
  "int": 1,
  "set": [
    1,
    3
  ],
  "tolerance": {
    "clamp": 1e-09,
    "digits": 7,
    "eps": 1e-12,
    "tie": 1e-09
  },
  "tuple": [
    1,
    2
  ]
}'''

    def test_decoder(self):
        self.assertEqual(loads(self.expected_json), self.decoded_obj)

    def test_encoder(self):
        self.assertEqual(dumps(self.test_obj), self.expected_json)

    def test_dump_ends_with_newline(self):
        fp = io.StringIO()
        dump(self.test_obj, fp)
        self.assertEqual(fp.getvalue(), self.expected_json + "\n")

    def test_shortest_round_trip_floats(self):
        value = 0.1 + 0.2
        self.assertEqual(dumps(value), "0.30000000000000004")
        self.assertEqual(loads(dumps(value)), value)

    def test_unknown_types(self):
        with self.assertRaises(TypeError):
            dumps({"object": object()})


if __name__ == '__main__':
    unittest.main()
