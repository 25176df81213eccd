import unittest

import numpy as np

from convex_cocompact.domain import EllipsoidBody, hilbert_distance, unit_ball
from convex_cocompact.errors import ChartError, DegenerateLineError, FlowRangeError, PreconditionError
from convex_cocompact.flow import EndpointBox, UnitTangent, flow, in_invariant_set, tangent_distance, transform
from convex_cocompact.projlin import ProjectiveMap


def boost(s):
    return ProjectiveMap(np.array([[np.cosh(s), 0.0, np.sinh(s)], [0.0, 1.0, 0.0], [np.sinh(s), 0.0, np.cosh(s)]]))


class TestUnitTangent(unittest.TestCase):
    def setUp(self):
        self.disc = unit_ball(3)
        self.chart = self.disc.chart
        self.origin = self.chart.from_coords([0.0, 0.0])

    def test_through(self):
        v = UnitTangent.through(self.disc, self.origin, self.chart.from_coords([0.5, 0.0]))
        self.assertAlmostEqual(v.offset, 0.0, places=12)
        self.assertEqual(v.forward, self.chart.from_coords([1.0, 0.0]))
        self.assertEqual(v.backward, self.chart.from_coords([-1.0, 0.0]))
        self.assertEqual(v.base, self.origin)

    def test_unit_speed(self):
        v = UnitTangent.through(self.disc, self.origin, self.chart.from_coords([0.0, 0.3]))
        for t in (-8.0, -2.5, 0.5, 3.0, 8.0):
            w = flow(self.disc, v, t)
            self.assertAlmostEqual(hilbert_distance(self.disc, v.base, w.base), abs(t), places=6)
            self.assertAlmostEqual(tangent_distance(self.disc, v, w), abs(t), places=12)

    def test_flow_group_law(self):
        v = UnitTangent.through(self.disc, self.chart.from_coords([0.2, -0.1]), self.chart.from_coords([0.0, 0.4]))
        a = flow(self.disc, flow(self.disc, v, 1.5), -0.25)
        self.assertAlmostEqual(a.offset, flow(self.disc, v, 1.25).offset, places=12)

    def test_collar(self):
        v = UnitTangent.through(self.disc, self.origin, self.chart.from_coords([0.5, 0.0]))
        with self.assertRaises(FlowRangeError) as ctx:
            flow(self.disc, v, 30.0)
        self.assertGreater(ctx.exception.achieved_t, 13.0)
        self.assertLess(ctx.exception.achieved_t, 30.0)

    def test_equivariance(self):
        g = boost(0.7)
        v = UnitTangent.through(self.disc, self.chart.from_coords([0.1, 0.2]), self.chart.from_coords([-0.3, 0.1]))
        w = flow(self.disc, v, 1.3)
        gv, gw = transform(g, v), transform(g, w)
        self.assertLess(gv.base.angle_to(g(v.base)), 1e-9)
        self.assertAlmostEqual(tangent_distance(self.disc, gv, gw), 1.3, places=9)
        self.assertAlmostEqual(flow(self.disc, gv, 1.3).offset, gw.offset, places=9)

    def test_from_endpoints(self):
        a = self.chart.from_coords([-1.0, 0.0])
        b = self.chart.from_coords([0.0, 1.0])
        v = UnitTangent.from_endpoints(self.disc, a, b)
        self.assertTrue(self.disc.contains_vector(v.base_vector()))
        with self.assertRaises(DegenerateLineError):
            UnitTangent.from_endpoints(self.disc, a, a)
        with self.assertRaises(PreconditionError):
            UnitTangent.from_endpoints(self.disc, a, self.chart.from_coords([0.0, 0.5]))

    def test_transform_out_of_chart(self):
        a, b = self.chart.from_coords([-1.0, 0.0]), self.chart.from_coords([1.0, 0.0])
        v = UnitTangent.from_endpoints(self.disc, a, b)
        swap = np.array([[0.0, 0.0, 1.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0]])
        with self.assertRaises(ChartError):
            transform(swap, v)

    def test_invariant_set(self):
        a, b = self.chart.from_coords([-1.0, 0.0]), self.chart.from_coords([1.0, 0.0])
        v = UnitTangent.from_endpoints(self.disc, a, b)
        self.assertTrue(in_invariant_set(v, self.disc))
        smaller = EllipsoidBody(self.chart, self.chart.covector, 0.5 * np.eye(3)[:, :2])
        self.assertFalse(in_invariant_set(v, smaller, self.disc))


class TestEndpointBox(unittest.TestCase):
    def test_contains_center(self):
        disc = unit_ball(3)
        box = EndpointBox(disc.chart.from_coords([-1.0, 0.0]), disc.chart.from_coords([1.0, 0.0]))
        center = box.center(disc)
        self.assertTrue(box.contains(disc, center))
        self.assertTrue(box.contains(disc, center.shifted(0.5)))
        self.assertFalse(box.contains(disc, center.shifted(1.5)))
        self.assertTrue(box.same_as(EndpointBox(box.backward, box.forward)))
        self.assertFalse(box.same_as(EndpointBox(box.backward, box.forward, base_radius=2.0)))

    def test_center_needs_boundary_points(self):
        disc = unit_ball(3)
        box = EndpointBox(disc.chart.from_coords([-0.5, 0.0]), disc.chart.from_coords([1.0, 0.0]))
        with self.assertRaises(PreconditionError):
            box.center(disc)


if __name__ == "__main__":
    unittest.main()
